#pragma once

// Polytorus side: analytic polynomials in z_1..z_N, the coefficient-preserving
// correspondence n = p^alpha <-> z^alpha with Dirichlet polynomials, monomial
// convolution, and point evaluation.

#include <cstddef>

#include "dirichlet/arith.hpp"

namespace dirichlet {

// Analytic polynomial on the N-torus. Keys are exponent multi-indices
// (variable j is the slot of the j-th prime); only nonnegative exponents
// exist by construction. No exact zeros are stored.
class TorusPoly {
 public:
  using Terms = std::map<MultiIndex, cplx>;

  TorusPoly() = default;
  explicit TorusPoly(std::size_t nvars) : nvars_(nvars) {}

  static TorusPoly constant(cplx c) {
    TorusPoly f;
    f.set(MultiIndex{}, c);
    return f;
  }

  std::size_t nvars() const { return nvars_; }

  // Pads the variable count upward; shrinking below a used slot is refused.
  void set_nvars(std::size_t n) {
    if (n < used_vars()) throw std::invalid_argument("nvars below the variables in use");
    nvars_ = n;
  }

  // Highest variable slot referenced by any term.
  std::size_t used_vars() const {
    std::size_t u = 0;
    for (const auto& [a, c] : t_)
      if (!a.empty()) u = std::max(u, a.var_count());
    return u;
  }

  void set(const MultiIndex& alpha, cplx c) {
    if (c == cplx{0.0, 0.0}) {
      t_.erase(alpha);
      return;
    }
    nvars_ = std::max(nvars_, alpha.empty() ? std::size_t{0} : alpha.var_count());
    t_[alpha] = c;
  }

  void add(const MultiIndex& alpha, cplx c) { set(alpha, at(alpha) + c); }

  cplx at(const MultiIndex& alpha) const {
    auto it = t_.find(alpha);
    return it == t_.end() ? cplx{0.0, 0.0} : it->second;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  // Largest exponent appearing for variable j (1-based).
  std::uint32_t degree_of_var(std::size_t j) const {
    const std::uint64_t p = prime(j);
    std::uint32_t d = 0;
    for (const auto& [a, c] : t_) d = std::max(d, a.exponent(p));
    return d;
  }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [a, c] : t_) d = std::max(d, a.degree());
    return d;
  }

  TorusPoly& operator+=(const TorusPoly& o) {
    nvars_ = std::max(nvars_, o.nvars_);
    for (const auto& [a, c] : o.t_) add(a, c);
    return *this;
  }
  TorusPoly& operator-=(const TorusPoly& o) {
    nvars_ = std::max(nvars_, o.nvars_);
    for (const auto& [a, c] : o.t_) add(a, -c);
    return *this;
  }
  TorusPoly& operator*=(cplx c) {
    if (c == cplx{0.0, 0.0}) {
      t_.clear();
      return *this;
    }
    for (auto& [a, v] : t_) v *= c;
    return *this;
  }

  friend TorusPoly operator+(TorusPoly a, const TorusPoly& b) { return a += b; }
  friend TorusPoly operator-(TorusPoly a, const TorusPoly& b) { return a -= b; }
  friend TorusPoly operator*(TorusPoly a, cplx c) { return a *= c; }
  friend TorusPoly operator*(cplx c, TorusPoly a) { return a *= c; }
  friend bool operator==(const TorusPoly& a, const TorusPoly& b) { return a.t_ == b.t_; }

 private:
  std::size_t nvars_ = 0;
  Terms t_;
};

// Coefficient-preserving lift: the term a_n n^{-s} with n = p^alpha becomes
// a_n z^alpha. The variable count is the prime index of the largest prime
// dividing the support.
inline TorusPoly bohr_lift(const DirichletPoly& d) {
  TorusPoly f;
  for (const auto& [n, c] : d.terms()) {
    MultiIndex alpha = factorize(n);
    alpha.var_count();  // force the dense-range check before storing
    f.set(alpha, c);
  }
  return f;
}

// Inverse direction: z^alpha becomes n^{-s} with n = p^alpha. Throws when an
// index does not fit 64 bits.
inline DirichletPoly bohr_transform(const TorusPoly& f) {
  DirichletPoly d;
  for (const auto& [a, c] : f.terms()) d.set(unfactorize(a), c);
  return d;
}

// Monomial convolution: coefficient at alpha is sum over beta + gamma = alpha
// of the factor coefficients. Total degrees add. Univariate factors take a
// dense array path; high-degree one-variable products are common and the map
// overhead dominates them otherwise.
inline TorusPoly poly_product(const TorusPoly& a, const TorusPoly& b) {
  TorusPoly out;
  out.set_nvars(std::max(a.nvars(), b.nvars()));
  if (a.nvars() <= 1 && b.nvars() <= 1) {
    const std::uint32_t da = a.degree_of_var(1), db = b.degree_of_var(1);
    std::vector<cplx> ca(da + 1), cb(db + 1), cc(da + db + 1, cplx{0.0, 0.0});
    for (const auto& [al, c] : a.terms()) ca[al.exponent(2)] = c;
    for (const auto& [al, c] : b.terms()) cb[al.exponent(2)] = c;
    for (std::uint32_t i = 0; i <= da; ++i) {
      if (ca[i] == cplx{0.0, 0.0}) continue;
      for (std::uint32_t j = 0; j <= db; ++j) cc[i + j] += ca[i] * cb[j];
    }
    for (std::uint32_t k = 0; k < cc.size(); ++k)
      if (cc[k] != cplx{0.0, 0.0}) out.set(MultiIndex::from_exponents({k}), cc[k]);
    return out;
  }
  for (const auto& [ba, ca] : a.terms())
    for (const auto& [bb, cb] : b.terms()) out.add(ba + bb, ca * cb);
  return out;
}

inline TorusPoly operator*(const TorusPoly& a, const TorusPoly& b) { return poly_product(a, b); }

// Evaluation at z with one cached power ladder per variable.
inline cplx eval_lift(const TorusPoly& f, const std::vector<cplx>& z) {
  if (z.size() != f.nvars())
    throw std::invalid_argument("evaluation point has " + std::to_string(z.size()) +
                                " coordinates, polynomial has " + std::to_string(f.nvars()));
  std::vector<std::vector<cplx>> pows(f.nvars());
  for (std::size_t j = 1; j <= f.nvars(); ++j) {
    std::uint32_t d = f.degree_of_var(j);
    auto& ladder = pows[j - 1];
    ladder.resize(d + 1);
    ladder[0] = cplx{1.0, 0.0};
    for (std::uint32_t k = 1; k <= d; ++k) ladder[k] = ladder[k - 1] * z[j - 1];
  }
  detail::KahanC acc;
  for (const auto& [a, c] : f.terms()) {
    cplx m = c;
    for (const auto& fac : a.factors()) {
      auto idx = prime_index(fac.p);
      m *= pows[*idx - 1][fac.e];
    }
    acc.add(m);
  }
  return acc.value();
}

}  // namespace dirichlet
