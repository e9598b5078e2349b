#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "dirichlet/arith.hpp"

using namespace dirichlet;

namespace {

// trial-division oracle, written independently of the library's factorizer
std::vector<Factor> factorize_oracle(std::uint64_t n) {
  std::vector<Factor> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_prime_oracle(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("prime table agrees with a sieve") {
  std::vector<std::uint64_t> got = first_primes(200);
  std::size_t k = 0;
  for (std::uint64_t n = 2; k < 200; ++n)
    if (is_prime_oracle(n)) REQUIRE(got[k++] == n);
  REQUIRE(prime(1) == 2);
  REQUIRE(prime(25) == 97);
  REQUIRE(prime(100) == 541);
  for (std::size_t i = 1; i <= 200; ++i) REQUIRE(prime_index(prime(i)) == i);
  REQUIRE_FALSE(prime_index(4).has_value());
  REQUIRE_FALSE(prime_index(1).has_value());
}

TEST_CASE("factorize matches trial division exhaustively") {
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    const MultiIndex mi = factorize(n);
    const auto& fs = mi.factors();
    auto oracle = factorize_oracle(n);
    REQUIRE(fs.size() == oracle.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
      REQUIRE(fs[i].p == oracle[i].p);
      REQUIRE(fs[i].e == oracle[i].e);
    }
    REQUIRE(unfactorize(factorize(n)) == n);
  }
}

TEST_CASE("factorize handles large semiprimes and primes") {
  // 2^53 + 5 is prime; its factorization must come back as itself
  std::uint64_t big = 9007199254740997ULL;
  const MultiIndex mbig = factorize(big);
  const auto& fs = mbig.factors();
  REQUIRE(fs.size() == 1);
  REQUIRE(fs[0].p == big);
  REQUIRE(fs[0].e == 1);
  REQUIRE(gpd(big) == big);

  std::uint64_t a = 1000003, b = 998117;  // both prime
  const MultiIndex msemi = factorize(a * b);
  const auto& sp = msemi.factors();
  REQUIRE(sp.size() == 2);
  REQUIRE(sp[0].p == b);
  REQUIRE(sp[1].p == a);
  REQUIRE(unfactorize(factorize(a * b)) == a * b);
}

TEST_CASE("gpd scan") {
  REQUIRE(gpd(1) == 1);
  for (std::uint64_t n = 2; n <= 5000; ++n) {
    std::uint64_t expect = factorize_oracle(n).back().p;
    REQUIRE(gpd(n) == expect);
  }
}

TEST_CASE("unfactorize rejects 64-bit overflow") {
  MultiIndex too_big{std::vector<Factor>{{2, 64}}};
  REQUIRE_THROWS_AS(unfactorize(too_big), std::overflow_error);
  MultiIndex fits{std::vector<Factor>{{2, 63}}};
  REQUIRE(unfactorize(fits) == (std::uint64_t{1} << 63));
}

TEST_CASE("multi-index round trip and ordering") {
  MultiIndex a = MultiIndex::from_exponents({2, 0, 1});  // 2^2 * 5
  REQUIRE(a.exponent(2) == 2);
  REQUIRE(a.exponent(3) == 0);
  REQUIRE(a.exponent(5) == 1);
  REQUIRE(a.degree() == 3);
  REQUIRE(a.gpd() == 5);
  REQUIRE(a.var_count() == 3);
  auto dense = a.exponents(4);
  REQUIRE(dense == std::vector<std::uint32_t>{2, 0, 1, 0});

  MultiIndex b = MultiIndex::from_exponents({1, 1});
  MultiIndex sum = a + b;  // 2^3 * 3 * 5
  REQUIRE(sum.exponent(2) == 3);
  REQUIRE(sum.exponent(3) == 1);
  REQUIRE(sum.exponent(5) == 1);

  // lexicographic in the dense exponent vector
  REQUIRE(MultiIndex::from_exponents({1}) < MultiIndex::from_exponents({2}));
  REQUIRE(MultiIndex::from_exponents({0, 5}) < MultiIndex::from_exponents({1}));
  REQUIRE(MultiIndex{} < MultiIndex::from_exponents({0, 0, 1}));
  REQUIRE(MultiIndex::from_exponents({1, 2}) < MultiIndex::from_exponents({1, 3}));
}

TEST_CASE("multi-index of a huge prime stays sparse") {
  MultiIndex m{std::vector<Factor>{{9007199254740997ULL, 3}}};
  REQUIRE(m.exponent(9007199254740997ULL) == 3);
  REQUIRE(m.degree() == 3);
  REQUIRE_THROWS_AS(m.var_count(), std::domain_error);
}

TEST_CASE("series term map keeps only nonzero terms") {
  DirichletPoly d;
  REQUIRE(d.is_zero());
  REQUIRE(d.support_bound() == 0);
  d.set(6, {1.0, 0.0});
  d.set(2, {0.5, -1.0});
  REQUIRE(d.size() == 2);
  d.set(6, {0.0, 0.0});
  REQUIRE(d.size() == 1);
  REQUIRE(d.at(6) == cplx{0.0, 0.0});
  d.add(2, {-0.5, 1.0});
  REQUIRE(d.is_zero());
  REQUIRE_THROWS(d.set(0, {1.0, 0.0}));
}

TEST_CASE("dirichlet product against a brute-force convolution") {
  std::mt19937_64 eng(7);
  auto rnd = [&] {
    return cplx{static_cast<double>(static_cast<int>(eng() % 7)) - 3.0,
                static_cast<double>(static_cast<int>(eng() % 7)) - 3.0};
  };
  for (int trial = 0; trial < 50; ++trial) {
    DirichletPoly a, b;
    for (int i = 0; i < 8; ++i) a.add(1 + eng() % 40, rnd());
    for (int i = 0; i < 8; ++i) b.add(1 + eng() % 40, rnd());
    std::map<std::uint64_t, cplx> oracle;
    for (const auto& [n, c] : a.terms())
      for (const auto& [m, d] : b.terms()) oracle[n * m] += c * d;
    DirichletPoly prod = a * b;
    for (const auto& [n, c] : oracle) REQUIRE(std::abs(prod.at(n) - c) <= 1e-12);
    for (const auto& [n, c] : prod.terms()) REQUIRE(std::abs(oracle[n] - c) <= 1e-12);
  }
}

TEST_CASE("product of large indices refuses to wrap") {
  DirichletPoly a, b;
  a.set(std::uint64_t{1} << 40, {1.0, 0.0});
  b.set(std::uint64_t{1} << 40, {1.0, 0.0});
  REQUIRE_THROWS_AS(a * b, std::overflow_error);
}

TEST_CASE("evaluate sums a partial zeta accurately") {
  DirichletPoly d;
  for (std::uint64_t n = 1; n <= 100; ++n) d.set(n, {1.0, 0.0});
  cplx v = d.evaluate(cplx{2.0, 0.0});
  double expect = 0.0;  // sum n^-2 backwards for accuracy
  for (int n = 100; n >= 1; --n) expect += 1.0 / (static_cast<double>(n) * n);
  REQUIRE(std::abs(v.real() - expect) <= 1e-14);
  REQUIRE(std::abs(v.imag()) <= 1e-16);

  cplx w = d.evaluate(cplx{1.5, -2.0});
  cplx expect2{0.0, 0.0};
  for (int n = 100; n >= 1; --n)
    expect2 += std::pow(cplx{static_cast<double>(n), 0.0}, cplx{-1.5, 2.0});
  REQUIRE(std::abs(w - expect2) <= 1e-12);
}

TEST_CASE("restriction to a prime budget") {
  DirichletPoly d;
  for (std::uint64_t n = 1; n <= 30; ++n) d.set(n, {static_cast<double>(n), 0.0});
  DirichletPoly r = restrict_primes(d, 2);
  std::vector<std::uint64_t> expect{1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27};
  REQUIRE(r.size() == expect.size());
  for (std::uint64_t n : expect) REQUIRE(r.at(n) == d.at(n));
  DirichletPoly only1 = restrict_primes(d, 0);
  REQUIRE(only1.size() == 1);
  REQUIRE(only1.at(1) == d.at(1));
}

TEST_CASE("characters twist coefficients multiplicatively") {
  // character sending 2 -> i, 3 -> -1
  Character chi({{0.0, 1.0}, {-1.0, 0.0}});
  REQUIRE(chi.value(1) == cplx{1.0, 0.0});
  REQUIRE(std::abs(chi.value(12) - cplx{1.0, 0.0} * cplx{0.0, 1.0} * cplx{0.0, 1.0} *
                                       cplx{-1.0, 0.0}) <= 1e-15);
  REQUIRE_THROWS(chi.value(5));

  DirichletPoly d;
  d.set(1, {1.0, 0.0});
  d.set(2, {2.0, 0.0});
  d.set(4, {1.0, 1.0});
  DirichletPoly once = twist(d, chi);
  DirichletPoly twice = twist(once, chi);
  REQUIRE(twice.at(2) == cplx{-2.0, 0.0});
  REQUIRE(twice.at(4) == cplx{1.0, 1.0});  // chi(4)^2 = (i^2)^2 = 1
  REQUIRE(twice.at(1) == cplx{1.0, 0.0});
  REQUIRE(once.at(4) == cplx{-1.0, -1.0});  // chi(4) = i^2 = -1

  REQUIRE_THROWS(Character(std::vector<cplx>{{2.0, 0.0}}));  // off the unit circle
}

TEST_CASE("vertical translation is a twist by a character") {
  DirichletPoly d;
  d.set(1, {1.0, 0.0});
  d.set(2, {0.5, 0.5});
  d.set(6, {-1.0, 2.0});
  double t = 1.7;
  DirichletPoly shifted = twist(d, Character::vertical(t, 3));
  for (double sigma : {0.0, 1.0, 2.5}) {
    cplx lhs = shifted.evaluate(cplx{sigma, 0.0});
    cplx rhs = d.evaluate(cplx{sigma, t});
    REQUIRE(std::abs(lhs - rhs) <= 1e-13);
  }
}
