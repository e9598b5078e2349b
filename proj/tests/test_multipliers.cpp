#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "dirichlet/multipliers.hpp"

using namespace dirichlet;

namespace {

DirichletPoly one_plus_2s() {
  DirichletPoly d;
  d.set(1, {1.0, 0.0});
  d.set(2, {1.0, 0.0});
  return d;
}

const PExponent p1 = PExponent::integer(1);
const PExponent p2 = PExponent::integer(2);
const PExponent p4 = PExponent::integer(4);
const PExponent pinf = PExponent::infinity();

}  // namespace

TEST_CASE("classification by exponent order") {
  REQUIRE(classify(p4, p2).kind == MultiplierKind::space_ht);
  REQUIRE(classify(p4, p2).t == p4);
  REQUIRE(classify(PExponent::integer(3), p2).t == PExponent::integer(6));
  REQUIRE(classify(pinf, p2).t == p2);
  REQUIRE(classify(p2, p2).kind == MultiplierKind::space_hinf);
  REQUIRE(classify(pinf, pinf).kind == MultiplierKind::space_hinf);
  REQUIRE(classify(p2, p4).kind == MultiplierKind::zero_only);
  REQUIRE(classify(p1, pinf).kind == MultiplierKind::zero_only);

  REQUIRE(classify(p4, p2).name() == "H4");
  REQUIRE(classify(PExponent::ratio(5, 2), p2).name() == "H10");
  REQUIRE(classify(p2, p2).name() == "Hinf");
  REQUIRE(classify(p2, p4).name() == "zero");
}

TEST_CASE("multiplier norm is the norm in the identified space") {
  DirichletPoly d = one_plus_2s();
  const double six4 = std::pow(6.0, 0.25);

  NormResult down = multiplier_norm(d, p4, p2);
  REQUIRE(down.method == "exact-even");
  REQUIRE(std::abs(down.value - six4) <= 1e-12);

  // equal derived exponent, equal norm: t(4,2) = t(inf,4) = 4
  NormResult from_sup = multiplier_norm(d, pinf, p4);
  REQUIRE(std::abs(from_sup.value - down.value) <= 1e-12);

  NormResult same = multiplier_norm(d, p2, p2);
  REQUIRE(same.method == "grid-sup");
  REQUIRE(std::abs(same.value - 2.0) <= 1e-6);

  REQUIRE(multiplier_norm(DirichletPoly{}, p2, p4).value == 0.0);
  REQUIRE_THROWS_AS(multiplier_norm(d, p2, p4), std::domain_error);
  REQUIRE_THROWS_AS(multiplier_norm(d, p1, p2), std::domain_error);
}

TEST_CASE("search lower bound stays below the norm and finds most of it") {
  DirichletPoly d = one_plus_2s();
  const double exact = std::pow(6.0, 0.25);
  EngineConfig cfg;
  cfg.samples = std::int64_t{1} << 12;
  SearchBound b = operator_norm_lower_bound(d, p4, p2, 40, cfg);
  REQUIRE(b.value >= 0.9 * exact);
  REQUIRE(b.value <= exact + 1e-9);   // every quotient is exact for this pair
  REQUIRE(b.evaluations >= 5);
  REQUIRE_FALSE(b.witness.empty());

  REQUIRE(operator_norm_lower_bound(DirichletPoly{}, p4, p2, 5).value == 0.0);
}

TEST_CASE("search respects the sup norm pair") {
  DirichletPoly d;
  d.set(1, {2.0, 0.0});
  d.set(3, {1.0, 0.0});
  EngineConfig cfg;
  cfg.samples = std::int64_t{1} << 12;
  SearchBound b = operator_norm_lower_bound(d, p2, p2, 10, cfg);
  double sup = norm_hinf(d).value;   // 3
  REQUIRE(b.value <= sup + 1e-6);
  REQUIRE(b.value >= 0.8 * sup);
}

TEST_CASE("essential norm brackets by regime") {
  DirichletPoly d = one_plus_2s();
  const double l2 = std::sqrt(2.0);
  const double l4 = std::pow(6.0, 0.25);

  EssBracket down = ess_norm_bracket(d, p4, p2);
  REQUIRE(down.regime == EssRegime::drop_finite);
  REQUIRE(std::abs(down.lower - l2) <= 1e-12);
  REQUIRE(std::abs(down.upper - l4) <= 1e-12);
  REQUIRE_FALSE(down.compact);

  EssBracket sup = ess_norm_bracket(d, pinf, p2);
  REQUIRE(sup.regime == EssRegime::from_sup);
  REQUIRE(std::abs(sup.lower - 0.5 * l2) <= 1e-12);
  REQUIRE(std::abs(sup.upper - l2) <= 1e-12);

  EssBracket same = ess_norm_bracket(d, p2, p2);
  REQUIRE(same.regime == EssRegime::fixed_exponent);
  REQUIRE(std::abs(same.lower - 2.0) <= 1e-6);
  REQUIRE(std::abs(same.upper - same.lower) <= 1e-12);

  EssBracket l1 = ess_norm_bracket(d, p1, p1, EngineConfig{});
  REQUIRE(l1.regime == EssRegime::fixed_exponent_l1);
  // lower = max(half the sup, the l1 norm); here the l1 norm 4/pi wins
  double fourpi = 4.0 / std::numbers::pi;
  REQUIRE(l1.lower >= 1.0 - 1e-9);                     // at least half the sup
  REQUIRE(std::abs(l1.lower - fourpi) <= std::max(8.0 * l1.lower_err, 2e-3));
  REQUIRE(std::abs(l1.upper - 2.0) <= 1e-6);
  REQUIRE(l1.lower <= l1.upper + 1e-9);

  REQUIRE_THROWS_AS(ess_norm_bracket(d, p2, p4), std::domain_error);
}

TEST_CASE("only the zero series is compact and brackets always nest") {
  EssBracket z = ess_norm_bracket(DirichletPoly{}, p4, p2);
  REQUIRE(z.compact);
  REQUIRE(z.lower == 0.0);
  REQUIRE(z.upper == 0.0);

  DirichletPoly d;
  d.set(1, {0.3, 0.1});
  d.set(2, {-0.4, 0.0});
  d.set(6, {0.2, 0.2});
  for (auto [p, q] : std::vector<std::pair<PExponent, PExponent>>{
           {p4, p2}, {pinf, p2}, {p2, p2}, {p1, p1}, {PExponent::integer(3), p2}}) {
    EssBracket b = ess_norm_bracket(d, p, q);
    REQUIRE_FALSE(b.compact);
    REQUIRE(b.lower >= 0.0);
    REQUIRE(b.lower <= b.upper + 3.0 * (b.lower_err + b.upper_err) + 1e-9);
  }
}
