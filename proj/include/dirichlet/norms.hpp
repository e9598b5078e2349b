#pragma once

// Norm routes for Hardy spaces of Dirichlet polynomials, computed on the
// torus lift: exact Parseval at p = 2, exact even powers via convolution,
// quasi-Monte Carlo for general finite p, a certified grid supremum at
// p = infinity, and a vertical-line mean as an independent cross-check.

#include <numeric>
#include <string>

#include "dirichlet/torus.hpp"

namespace dirichlet {

// Exponent p >= 1, kept as an exact rational, or infinity.
struct PExponent {
  std::int64_t num = 1;
  std::int64_t den = 1;
  bool infinite = false;

  static PExponent infinity() {
    PExponent p;
    p.infinite = true;
    return p;
  }

  static PExponent integer(std::int64_t n) { return ratio(n, 1); }

  static PExponent ratio(std::int64_t n, std::int64_t d) {
    if (d <= 0 || n <= 0) throw std::invalid_argument("exponent must be a positive rational");
    std::int64_t g = std::gcd(n, d);
    PExponent p;
    p.num = n / g;
    p.den = d / g;
    if (p.num < p.den) throw std::invalid_argument("exponent must be at least 1");
    return p;
  }

  // Accepts "inf", integers, "a/b", and short decimals like "2.5".
  static PExponent parse(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return infinity();
    auto slash = s.find('/');
    try {
      if (slash != std::string::npos)
        return ratio(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
      auto dot = s.find('.');
      if (dot == std::string::npos) return integer(std::stoll(s));
      std::string frac = s.substr(dot + 1);
      if (frac.size() > 9) throw std::invalid_argument("too many decimal places");
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      std::int64_t whole = dot == 0 ? 0 : std::stoll(s.substr(0, dot));
      std::int64_t n = whole * den + (frac.empty() ? 0 : std::stoll(frac));
      return ratio(n, den);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse exponent '" + s + "'");
    }
  }

  double value() const {
    if (infinite) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
  }

  bool is_integer() const { return !infinite && den == 1; }
  bool is_even_integer() const { return is_integer() && num % 2 == 0; }

  std::string str() const {
    if (infinite) return "inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const PExponent& a, const PExponent& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.num == b.num && a.den == b.den;
  }

  // Natural order with infinity on top.
  friend bool operator<(const PExponent& a, const PExponent& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
};

// The exponent t with 1/t = 1/q - 1/p, i.e. t = pq/(p-q); t = q when p is
// infinite. Requires q < p.
// t = (pn/pd)*(qn/qd) / ((pn qd - qn pd)/(pd qd)) = (pn qn) / (pn qd - qn pd)
inline PExponent multiplier_exponent(PExponent p, PExponent q) {
  if (!(q < p)) throw std::invalid_argument("multiplier exponent needs q < p");
  if (p.infinite) return q;
  return PExponent::ratio(p.num * q.num, p.num * q.den - q.num * p.den);
}

struct NormResult {
  double value = 0.0;
  double std_error = 0.0;
  std::string method;
};

// --- exact routes -----------------------------------------------------------

// Parseval: the H_2 norm is the coefficient l2 norm.
inline double norm_h2(const TorusPoly& f) {
  detail::Kahan acc;
  for (const auto& [a, c] : f.terms()) acc.add(std::norm(c));
  return std::sqrt(acc.sum);
}

inline double norm_h2(const DirichletPoly& d) {
  detail::Kahan acc;
  for (const auto& [n, c] : d.terms()) acc.add(std::norm(c));
  return std::sqrt(acc.sum);
}

// Even p: ||F||_p = ||F^{p/2}||_2^{2/p}, with the power formed by exact
// coefficient convolution. Accepts p in {2, 4, 6, 8}.
inline double norm_hp_even(const TorusPoly& f, int p) {
  if (p != 2 && p != 4 && p != 6 && p != 8)
    throw std::invalid_argument("even-power route accepts p in {2,4,6,8}");
  const int k = p / 2;
  if (k == 1) return norm_h2(f);
  TorusPoly f2 = poly_product(f, f);
  TorusPoly g = k == 2 ? f2 : (k == 3 ? poly_product(f2, f) : poly_product(f2, f2));
  return std::pow(norm_h2(g), 1.0 / static_cast<double>(k));
}

inline double norm_hp_even(const DirichletPoly& d, int p) { return norm_hp_even(bohr_lift(d), p); }

// --- sampled route -----------------------------------------------------------

// Mean of |F|^p over a sample plan, delta-method error bar on the p-th root.
inline Estimate norm_hp_qmc(const TorusPoly& f, PExponent p, SamplePlan plan) {
  if (p.infinite) throw std::invalid_argument("sampled route needs finite p");
  if (f.is_zero()) return {0.0, 0.0, 0};
  if (f.nvars() == 0) return {std::abs(f.at(MultiIndex{})), 0.0, 0};
  plan.nvars = f.nvars();
  const double pv = p.value();
  const auto cp = detail::CompiledPoly::compile(f);
  std::vector<std::vector<cplx>> lad;
  cp.prepare_scratch(lad);
  Estimate mean = integrate_torus(
      [&](const std::vector<double>& u) {
        double m = std::abs(cp.eval_phases(u.data(), lad));
        return m == 0.0 ? 0.0 : std::pow(m, pv);
      },
      plan);
  Estimate out;
  out.count = mean.count;
  if (mean.value <= 0.0) return out;
  out.value = std::pow(mean.value, 1.0 / pv);
  out.std_error = mean.std_error / pv * std::pow(mean.value, 1.0 / pv - 1.0);
  return out;
}

inline Estimate norm_hp_qmc(const DirichletPoly& d, PExponent p, const SamplePlan& plan) {
  return norm_hp_qmc(bohr_lift(d), p, plan);
}

// --- supremum route ----------------------------------------------------------

struct SupNorm {
  double value = 0.0;
  double phase_tol = 0.0;
  std::vector<cplx> omega;
};

// Certified from below by evaluation: grid plus golden-section refinement.
inline SupNorm norm_hinf(const TorusPoly& f, const EngineConfig& cfg = {}) {
  ExtremumResult r = extremum_on_torus(f, Extremum::maximize, cfg);
  return {r.value, r.phase_tol, r.omega};
}

inline SupNorm norm_hinf(const DirichletPoly& d, const EngineConfig& cfg = {}) {
  return norm_hinf(bohr_lift(d), cfg);
}

// --- vertical line -----------------------------------------------------------

namespace detail {

// sum a_n exp(-it log n) evaluated fast along the imaginary axis.
struct LineEvaluator {
  std::vector<double> ln;
  std::vector<cplx> c;

  explicit LineEvaluator(const DirichletPoly& d) {
    for (const auto& [n, a] : d.terms()) {
      ln.push_back(std::log(static_cast<double>(n)));
      c.push_back(a);
    }
  }

  cplx at(double t) const {
    KahanC acc;
    for (std::size_t i = 0; i < ln.size(); ++i)
      acc.add(c[i] * std::polar(1.0, -t * ln[i]));
    return acc.value();
  }
};

}  // namespace detail

// Trapezoid mean of |D(it)|^p over [-R, R], normalized by 2R; the p-th root.
// For p = inf returns the grid maximum of |D(it)|. Independent of the torus
// routes: no lift is formed.
inline double norm_vertical_line(const DirichletPoly& d, PExponent p, double R,
                                 std::int64_t steps) {
  if (steps < 2) throw std::invalid_argument("vertical line rule needs at least 2 steps");
  if (R <= 0.0) throw std::invalid_argument("vertical line rule needs R > 0");
  if (d.is_zero()) return 0.0;
  detail::LineEvaluator ev(d);
  const double h = 2.0 * R / static_cast<double>(steps);
  if (p.infinite) {
    double best = 0.0;
    for (std::int64_t i = 0; i <= steps; ++i)
      best = std::max(best, std::abs(ev.at(-R + h * static_cast<double>(i))));
    return best;
  }
  const double pv = p.value();
  detail::Kahan acc;
  for (std::int64_t i = 0; i <= steps; ++i) {
    double m = std::abs(ev.at(-R + h * static_cast<double>(i)));
    double x = m == 0.0 ? 0.0 : std::pow(m, pv);
    if (i == 0 || i == steps) x *= 0.5;
    acc.add(x);
  }
  return std::pow(acc.sum / static_cast<double>(steps), 1.0 / pv);
}

// --- routing ------------------------------------------------------------------

// Picks the sharpest route available for the exponent: exact l2, exact even
// powers, certified grid supremum, else the sampled mean.
inline NormResult norm_auto(const TorusPoly& f, PExponent p, const EngineConfig& cfg = {}) {
  NormResult r;
  if (f.is_zero()) {
    r.method = "zero";
    return r;
  }
  if (p.infinite) {
    SupNorm s = norm_hinf(f, cfg);
    r.value = s.value;
    r.method = "grid-sup";
    return r;
  }
  if (p == PExponent::integer(2)) {
    r.value = norm_h2(f);
    r.method = "exact-l2";
    return r;
  }
  if (p.is_even_integer() && p.num <= 8) {
    r.value = norm_hp_even(f, static_cast<int>(p.num));
    r.method = "exact-even";
    return r;
  }
  Estimate e = norm_hp_qmc(f, p, SamplePlan{std::max<std::size_t>(1, f.nvars()), cfg.samples,
                                            cfg.seed, SampleScheme::random_uniform});
  r.value = e.value;
  r.std_error = e.std_error;
  r.method = "qmc";
  return r;
}

inline NormResult norm_auto(const DirichletPoly& d, PExponent p, const EngineConfig& cfg = {}) {
  return norm_auto(bohr_lift(d), p, cfg);
}

}  // namespace dirichlet
