#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "dirichlet/colegamelin.hpp"

using namespace dirichlet;

namespace {
const PExponent p1 = PExponent::integer(1);
const PExponent p2 = PExponent::integer(2);
const PExponent p4 = PExponent::integer(4);
}  // namespace

TEST_CASE("growth factor formula and guards") {
  REQUIRE(std::abs(cg_growth_factor({cplx{0.5, 0.0}}, p2) - std::sqrt(4.0 / 3.0)) <= 1e-15);
  REQUIRE(std::abs(cg_growth_factor({cplx{0.5, 0.0}, cplx{0.0, 0.5}}, p2) - 4.0 / 3.0) <= 1e-15);
  REQUIRE(std::abs(cg_growth_factor({cplx{0.5, 0.0}}, p1) - 4.0 / 3.0) <= 1e-15);
  REQUIRE(cg_growth_factor({}, p2) == 1.0);
  REQUIRE(cg_growth_factor({cplx{0.0, 0.0}}, p4) == 1.0);
  REQUIRE_THROWS_AS(cg_growth_factor({cplx{1.0, 0.0}}, p2), std::invalid_argument);
  REQUIRE_THROWS_AS(cg_growth_factor({cplx{0.5, 0.0}}, PExponent::infinity()),
                    std::invalid_argument);
}

TEST_CASE("point evaluations obey the growth bound on random inputs") {
  std::mt19937_64 eng(2024);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> rad(0.0, 0.8);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  EngineConfig cfg;
  cfg.samples = std::int64_t{1} << 14;
  for (int trial = 0; trial < 40; ++trial) {
    DirichletPoly d;
    for (std::uint64_t n : {1ull, 2ull, 3ull, 4ull, 6ull, 8ull, 9ull, 12ull})
      if (eng() % 3) d.set(n, {g(eng), g(eng)});
    if (d.is_zero()) d.set(2, {1.0, 0.0});
    TorusPoly f = bohr_lift(d);
    std::vector<cplx> z;
    for (std::size_t j = 0; j < f.nvars(); ++j) z.push_back(std::polar(rad(eng), ang(eng)));
    PExponent p = trial % 2 ? p2 : p4;
    CgCheck c = cg_bound(f, p, z, cfg);
    REQUIRE(c.lhs <= c.rhs + 3.0 * c.norm_err * cg_growth_factor(z, p) + 1e-9);
    REQUIRE(c.rhs >= c.norm - 1e-12);   // growth factor is at least one
  }
}

TEST_CASE("series overload matches the lift route") {
  DirichletPoly d;
  d.set(1, {1.0, 0.0});
  d.set(2, {0.5, 0.5});
  CgCheck a = cg_bound(d, p2, {cplx{0.3, 0.2}});
  CgCheck b = cg_bound(bohr_lift(d), p2, {cplx{0.3, 0.2}});
  REQUIRE(a.lhs == b.lhs);
  REQUIRE(a.rhs == b.rhs);
  REQUIRE(a.method == "exact-l2");
}

TEST_CASE("flat ladder at exponent two reproduces the kernel coefficients") {
  // at p = 2 the ladder is constant: coefficients (1-r^2)^{1/2} conj(z)^k
  ExtremalSpec spec;
  spec.z = {cplx{0.5, 0.0}};
  spec.p = p2;
  TorusPoly f = extremal_function(spec, 12);
  const double scale = std::sqrt(0.75);
  for (std::uint32_t k = 0; k <= 12; ++k) {
    cplx want = scale * std::pow(0.5, static_cast<double>(k));
    REQUIRE(std::abs(f.at(MultiIndex::from_exponents({k})) - want) <= 1e-14);
  }
}

TEST_CASE("linear ladder at exponent one") {
  // at p = 1 the ladder is g_k = k + 1
  ExtremalSpec spec;
  spec.z = {cplx{0.0, 0.6}};
  spec.p = p1;
  TorusPoly f = extremal_function(spec, 8);
  const cplx zb = std::conj(cplx{0.0, 0.6});
  cplx pw{1.0, 0.0};
  for (std::uint32_t k = 0; k <= 8; ++k) {
    cplx want = 0.64 * (k + 1.0) * pw;
    REQUIRE(std::abs(f.at(MultiIndex::from_exponents({k})) - want) <= 1e-14);
    pw *= zb;
  }
}

TEST_CASE("the truncated extremizer attains the bound at its own point") {
  ExtremalSpec spec;
  spec.z = {cplx{0.5, 0.0}};
  spec.p = p2;
  TorusPoly f = extremal_function(spec, 40);
  REQUIRE(std::abs(norm_h2(f) - 1.0) <= 1e-9);
  double attained = std::abs(eval_lift(f, spec.z));
  REQUIRE(std::abs(attained - std::sqrt(4.0 / 3.0)) <= 1e-9);
  REQUIRE(std::abs(attained - cg_growth_factor(spec.z, p2)) <= 1e-9);

  CgCheck c = cg_bound(f, p2, spec.z);
  REQUIRE(std::abs(c.lhs - c.rhs) <= 1e-9);   // equality case
}

TEST_CASE("attainment holds in two variables") {
  ExtremalSpec spec;
  spec.z = {cplx{0.5, 0.0}, cplx{0.0, 0.3}};
  spec.p = p2;
  TorusPoly f = extremal_function(spec, 24);
  REQUIRE(std::abs(norm_h2(f) - 1.0) <= 1e-9);
  REQUIRE(std::abs(std::abs(eval_lift(f, spec.z)) - cg_growth_factor(spec.z, p2)) <= 1e-8);
}

TEST_CASE("truncation bound formula and decay") {
  ExtremalSpec spec;
  spec.z = {cplx{0.5, 0.0}};
  spec.p = p2;
  REQUIRE(std::abs(extremal_truncation_bound(spec, 10) -
                   12.0 * std::pow(0.5, 11) / 0.25) <= 1e-15);
  REQUIRE(extremal_truncation_bound({{cplx{0.0, 0.0}}, p2}, 5) == 0.0);
  REQUIRE(extremal_truncation_bound(spec, 80) < 1e-20);

  // the bound dominates the actual dropped tail at p = 2
  TorusPoly full = extremal_function(spec, 60);
  double tail = 0.0;
  for (const auto& [a, c] : full.terms())
    if (a.degree() > 20) tail += std::abs(c);
  REQUIRE(tail <= extremal_truncation_bound(spec, 20));
}

TEST_CASE("radius guards separate the two builders") {
  ExtremalSpec spec;
  spec.z = {cplx{0.995, 0.0}};
  spec.p = p2;
  REQUIRE_THROWS_AS(extremal_function(spec, 16), std::invalid_argument);
  REQUIRE_FALSE(extremal_function_near_boundary(spec, 16).is_zero());

  spec.z = {cplx{1.0, 0.0}};
  REQUIRE_THROWS_AS(extremal_function_near_boundary(spec, 16), std::invalid_argument);

  spec.z = {cplx{0.5, 0.0}};
  spec.p = PExponent::infinity();
  REQUIRE_THROWS_AS(extremal_function_near_boundary(spec, 16), std::invalid_argument);
}

TEST_CASE("empty point gives the constant witness") {
  ExtremalSpec spec;
  spec.p = p4;
  TorusPoly f = extremal_function(spec, 5);
  REQUIRE(f.size() == 1);
  REQUIRE(f.at(MultiIndex{}) == cplx{1.0, 0.0});
}
