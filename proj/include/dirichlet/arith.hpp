#pragma once

// Integer-indexed side of the library: finite Dirichlet polynomials
// sum a_n n^{-s}, prime factorizations, divisor products, restriction to a
// prime budget, and twists by completely multiplicative unimodular characters.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dirichlet {

using cplx = std::complex<double>;

namespace detail {

// Compensated (Kahan) accumulator. Deterministic for a fixed visit order.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

struct KahanC {
  Kahan re, im;
  void add(cplx z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cplx value() const { return {re.sum, im.sum}; }
};

inline cplx ipow(cplx base, std::uint64_t e) {
  cplx r{1.0, 0.0};
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// Growing table of primes. The first 64 are baked in; the rest are produced
// by trial division against earlier table entries, which is enough because
// the table is always contiguous from 2.
class PrimeTable {
 public:
  static PrimeTable& instance() {
    static PrimeTable t;
    return t;
  }

  // k is 1-based: nth(1) == 2.
  std::uint64_t nth(std::size_t k) {
    if (k == 0) throw std::invalid_argument("prime index is 1-based");
    std::lock_guard<std::mutex> lock(mu_);
    grow_to_count(k);
    return primes_[k - 1];
  }

  // 1-based index of p among all primes, or nullopt when p is not prime or
  // lies beyond the growth cap.
  std::optional<std::size_t> index_of(std::uint64_t p) {
    if (p < 2) return std::nullopt;
    if (p > kIndexCap) return std::nullopt;
    std::lock_guard<std::mutex> lock(mu_);
    while (primes_.back() < p) grow_one();
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - primes_.begin()) + 1;
  }

  std::vector<std::uint64_t> first(std::size_t count) {
    std::lock_guard<std::mutex> lock(mu_);
    grow_to_count(count);
    return {primes_.begin(), primes_.begin() + count};
  }

  static constexpr std::uint64_t kIndexCap = 10'000'000;

 private:
  PrimeTable() {
    static constexpr std::array<std::uint64_t, 64> seed = {
        2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,
        43,  47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101,
        103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
        173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239,
        241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311};
    primes_.assign(seed.begin(), seed.end());
  }

  void grow_to_count(std::size_t k) {
    while (primes_.size() < k) grow_one();
  }

  void grow_one() {
    std::uint64_t c = primes_.back() + 2;
    for (;; c += 2) {
      bool prime = true;
      for (std::uint64_t p : primes_) {
        if (p * p > c) break;
        if (c % p == 0) {
          prime = false;
          break;
        }
      }
      if (prime) break;
    }
    primes_.push_back(c);
  }

  std::mutex mu_;
  std::vector<std::uint64_t> primes_;
};

}  // namespace detail

// k-th prime, 1-based.
inline std::uint64_t prime(std::size_t k) { return detail::PrimeTable::instance().nth(k); }

// 1-based position of p in the prime sequence; nullopt if p is composite or
// past the table growth cap.
inline std::optional<std::size_t> prime_index(std::uint64_t p) {
  return detail::PrimeTable::instance().index_of(p);
}

inline std::vector<std::uint64_t> first_primes(std::size_t count) {
  return detail::PrimeTable::instance().first(count);
}

struct Factor {
  std::uint64_t p;
  std::uint32_t e;
  friend bool operator==(const Factor&, const Factor&) = default;
};

// Exponent vector of a prime factorization, stored sparsely as (prime,
// exponent) pairs sorted by prime. Entries with exponent zero never appear,
// which is the trailing-zero normalization of the dense view. The dense view
// (position j holds the exponent of the j-th prime) is materialized only on
// demand and only when every prime fits a small budget.
class MultiIndex {
 public:
  MultiIndex() = default;

  explicit MultiIndex(std::vector<Factor> f) : f_(std::move(f)) {
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (f_[i].e == 0) throw std::invalid_argument("zero exponent in multi-index");
      if (i > 0 && f_[i - 1].p >= f_[i].p)
        throw std::invalid_argument("multi-index factors must be sorted by prime");
      if (f_[i].p < 2) throw std::invalid_argument("multi-index entry is not a prime slot");
    }
  }

  // alpha[j] is the exponent of prime(j+1).
  static MultiIndex from_exponents(const std::vector<std::uint32_t>& alpha) {
    std::vector<Factor> f;
    for (std::size_t j = 0; j < alpha.size(); ++j)
      if (alpha[j] != 0) f.push_back({prime(j + 1), alpha[j]});
    return MultiIndex(std::move(f));
  }

  const std::vector<Factor>& factors() const { return f_; }
  bool empty() const { return f_.empty(); }

  std::uint32_t exponent(std::uint64_t p) const {
    auto it = std::lower_bound(f_.begin(), f_.end(), p,
                               [](const Factor& a, std::uint64_t b) { return a.p < b; });
    return (it != f_.end() && it->p == p) ? it->e : 0;
  }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& f : f_) d += f.e;
    return d;
  }

  // Greatest prime divisor; 1 for the empty index (n = 1).
  std::uint64_t gpd() const { return f_.empty() ? 1 : f_.back().p; }

  // Number of leading variables needed for a dense view, i.e. the prime
  // index of gpd. Throws if that index is not materializable.
  std::size_t var_count() const {
    if (f_.empty()) return 0;
    auto idx = prime_index(f_.back().p);
    if (!idx) throw std::domain_error("prime " + std::to_string(f_.back().p) +
                                      " is beyond the dense index range");
    return *idx;
  }

  std::vector<std::uint32_t> exponents(std::size_t nvars) const {
    std::vector<std::uint32_t> alpha(nvars, 0);
    for (const auto& f : f_) {
      auto idx = prime_index(f.p);
      if (!idx || *idx > nvars)
        throw std::domain_error("multi-index does not fit in " + std::to_string(nvars) +
                                " variables (prime " + std::to_string(f.p) + ")");
      alpha[*idx - 1] = f.e;
    }
    return alpha;
  }

  // Exponentwise sum: the index of a monomial product.
  MultiIndex operator+(const MultiIndex& o) const {
    std::vector<Factor> out;
    out.reserve(f_.size() + o.f_.size());
    auto a = f_.begin(), b = o.f_.begin();
    while (a != f_.end() && b != o.f_.end()) {
      if (a->p < b->p)
        out.push_back(*a++);
      else if (a->p > b->p)
        out.push_back(*b++);
      else {
        out.push_back({a->p, a->e + b->e});
        ++a;
        ++b;
      }
    }
    out.insert(out.end(), a, f_.end());
    out.insert(out.end(), b, o.f_.end());
    return MultiIndex(std::move(out));
  }

  bool operator==(const MultiIndex& o) const { return f_ == o.f_; }

  // Lexicographic by prime position on the dense views. Walking the sparse
  // forms in prime order gives the same answer without materializing them.
  std::strong_ordering operator<=>(const MultiIndex& o) const {
    auto a = f_.begin(), b = o.f_.begin();
    while (a != f_.end() && b != o.f_.end()) {
      if (a->p < b->p) return std::strong_ordering::greater;
      if (a->p > b->p) return std::strong_ordering::less;
      if (a->e != b->e) return a->e < b->e ? std::strong_ordering::less : std::strong_ordering::greater;
      ++a;
      ++b;
    }
    if (a != f_.end()) return std::strong_ordering::greater;
    if (b != o.f_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

 private:
  std::vector<Factor> f_;
};

// Trial division. The first 64 primes come from the cached table; beyond 311
// plain odd candidates are tried up to sqrt of the remaining cofactor.
inline MultiIndex factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize requires a positive integer");
  std::vector<Factor> out;
  std::uint64_t m = n;
  const auto small = first_primes(64);
  for (std::uint64_t p : small) {
    if (p * p > m) break;
    if (m % p == 0) {
      std::uint32_t e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      out.push_back({p, e});
    }
  }
  std::uint64_t c = 313;
  while (m > 1 && c <= m / c) {
    if (m % c == 0) {
      std::uint32_t e = 0;
      while (m % c == 0) {
        m /= c;
        ++e;
      }
      out.push_back({c, e});
    }
    c += 2;
  }
  if (m > 1) {
    if (!out.empty() && out.back().p == m)
      out.back().e += 1;
    else
      out.push_back({m, 1});
  }
  return MultiIndex(std::move(out));
}

inline std::uint64_t unfactorize(const MultiIndex& mi) {
  std::uint64_t n = 1;
  for (const auto& f : mi.factors()) {
    for (std::uint32_t i = 0; i < f.e; ++i) {
      std::uint64_t next;
      if (__builtin_mul_overflow(n, f.p, &next))
        throw std::overflow_error("unfactorize overflows 64-bit index");
      n = next;
    }
  }
  return n;
}

inline std::uint64_t gpd(std::uint64_t n) { return factorize(n).gpd(); }

// Finite Dirichlet polynomial sum a_n n^{-s}. The coefficient map holds no
// exact zeros; nothing is pruned by magnitude.
class DirichletPoly {
 public:
  using Terms = std::map<std::uint64_t, cplx>;

  DirichletPoly() = default;

  static DirichletPoly constant(cplx c) {
    DirichletPoly d;
    d.set(1, c);
    return d;
  }

  static DirichletPoly monomial(std::uint64_t n, cplx c = cplx{1.0, 0.0}) {
    DirichletPoly d;
    d.set(n, c);
    return d;
  }

  void set(std::uint64_t n, cplx c) {
    if (n == 0) throw std::invalid_argument("Dirichlet index must be positive");
    if (c == cplx{0.0, 0.0})
      t_.erase(n);
    else
      t_[n] = c;
  }

  void add(std::uint64_t n, cplx c) { set(n, at(n) + c); }

  cplx at(std::uint64_t n) const {
    auto it = t_.find(n);
    return it == t_.end() ? cplx{0.0, 0.0} : it->second;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  // Largest index carrying a coefficient; 0 for the zero polynomial.
  std::uint64_t support_bound() const { return t_.empty() ? 0 : t_.rbegin()->first; }

  // Compensated sum of a_n exp(-s log n), ascending in n. Exact at s = 0.
  cplx evaluate(cplx s) const {
    detail::KahanC acc;
    for (const auto& [n, c] : t_) {
      if (n == 1)
        acc.add(c);
      else
        acc.add(c * std::exp(-s * std::log(static_cast<double>(n))));
    }
    return acc.value();
  }

  DirichletPoly& operator+=(const DirichletPoly& o) {
    for (const auto& [n, c] : o.t_) add(n, c);
    return *this;
  }
  DirichletPoly& operator-=(const DirichletPoly& o) {
    for (const auto& [n, c] : o.t_) add(n, -c);
    return *this;
  }
  DirichletPoly& operator*=(cplx c) {
    if (c == cplx{0.0, 0.0}) {
      t_.clear();
      return *this;
    }
    for (auto& [n, v] : t_) v *= c;
    return *this;
  }

  friend DirichletPoly operator+(DirichletPoly a, const DirichletPoly& b) { return a += b; }
  friend DirichletPoly operator-(DirichletPoly a, const DirichletPoly& b) { return a -= b; }
  friend DirichletPoly operator*(DirichletPoly a, cplx c) { return a *= c; }
  friend DirichletPoly operator*(cplx c, DirichletPoly a) { return a *= c; }
  friend DirichletPoly operator-(DirichletPoly a) { return a *= cplx{-1.0, 0.0}; }
  friend bool operator==(const DirichletPoly& a, const DirichletPoly& b) { return a.t_ == b.t_; }

 private:
  Terms t_;
};

// Divisor convolution: coefficient of n in the product is
// sum over jk = n of a_j b_k.
inline DirichletPoly dirichlet_product(const DirichletPoly& a, const DirichletPoly& b) {
  DirichletPoly out;
  for (const auto& [j, aj] : a.terms()) {
    for (const auto& [k, bk] : b.terms()) {
      std::uint64_t n;
      if (__builtin_mul_overflow(j, k, &n))
        throw std::overflow_error("product support exceeds 64-bit indices");
      out.add(n, aj * bk);
    }
  }
  return out;
}

inline DirichletPoly operator*(const DirichletPoly& a, const DirichletPoly& b) {
  return dirichlet_product(a, b);
}

// Keeps the terms supported on the first `nprimes` primes. nprimes = 0 keeps
// only the constant term.
inline DirichletPoly restrict_primes(const DirichletPoly& d, std::size_t nprimes) {
  const std::uint64_t bound = nprimes == 0 ? 1 : prime(nprimes);
  DirichletPoly out;
  for (const auto& [n, c] : d.terms())
    if (n == 1 || factorize(n).gpd() <= bound) out.set(n, c);
  return out;
}

// Completely multiplicative character given by unimodular values on the
// first K primes.
class Character {
 public:
  explicit Character(std::vector<cplx> values) : w_(std::move(values)) {
    for (std::size_t j = 0; j < w_.size(); ++j)
      if (std::abs(std::abs(w_[j]) - 1.0) > 1e-12)
        throw std::invalid_argument("character value at prime " + std::to_string(prime(j + 1)) +
                                    " is not unimodular");
  }

  // Vertical translation by t: value p_j^{-it} at the j-th prime.
  static Character vertical(double t, std::size_t nprimes) {
    std::vector<cplx> w(nprimes);
    for (std::size_t j = 0; j < nprimes; ++j) {
      double lp = std::log(static_cast<double>(prime(j + 1)));
      w[j] = std::exp(cplx{0.0, -t * lp});
    }
    return Character(std::move(w));
  }

  std::size_t size() const { return w_.size(); }
  cplx at_prime_index(std::size_t j) const { return w_.at(j - 1); }

  cplx value(std::uint64_t n) const {
    cplx v{1.0, 0.0};
    const MultiIndex mi = factorize(n);
    for (const auto& f : mi.factors()) {
      std::size_t j = 0;
      for (std::size_t k = 1; k <= w_.size(); ++k)
        if (prime(k) == f.p) {
          j = k;
          break;
        }
      if (j == 0)
        throw std::invalid_argument("character has no value at prime " + std::to_string(f.p));
      v *= detail::ipow(w_[j - 1], f.e);
    }
    return v;
  }

 private:
  std::vector<cplx> w_;
};

inline DirichletPoly twist(const DirichletPoly& d, const Character& chi) {
  DirichletPoly out;
  for (const auto& [n, c] : d.terms()) out.set(n, c * chi.value(n));
  return out;
}

}  // namespace dirichlet
