// End-to-end acceptance battery: twelve independent checks of the library
// against closed forms, quadrature oracles, and cross-route agreement, all
// at desk scale. Prints one verdict line per check and exits with the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "dirichlet/fejer.hpp"
#include "dirichlet/multipliers.hpp"
#include "dirichlet/operators.hpp"

using namespace dirichlet;

namespace {

int failures = 0;

void verdict(int id, const char* name, bool ok, const std::string& detail, double secs) {
  std::printf("%s %2d  %-34s %s  (%.2fs)\n", ok ? "pass" : "FAIL", id, name, detail.c_str(),
              secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

template <class Body>
void criterion(int id, const char* name, Body&& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    detail = body(ok);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  verdict(id, name, ok, detail, secs);
}

DirichletPoly one_plus_2s() {
  DirichletPoly d;
  d.set(1, {1.0, 0.0});
  d.set(2, {1.0, 0.0});
  return d;
}

DirichletPoly two_plus_2s() {
  DirichletPoly d;
  d.set(1, {2.0, 0.0});
  d.set(2, {1.0, 0.0});
  return d;
}

double coeff_gap(const TorusPoly& a, const TorusPoly& b) {
  double worst = 0.0;
  for (const auto& [i, c] : a.terms()) worst = std::max(worst, std::abs(c - b.at(i)));
  for (const auto& [i, c] : b.terms()) worst = std::max(worst, std::abs(c - a.at(i)));
  return worst;
}

const PExponent p1 = PExponent::integer(1);
const PExponent p2 = PExponent::integer(2);
const PExponent p4 = PExponent::integer(4);

}  // namespace

int main() {
  const double six4 = std::pow(6.0, 0.25);

  criterion(1, "lift turns convolution into product", [&](bool& ok) {
    std::mt19937_64 eng(101);
    std::uniform_int_distribution<std::uint64_t> idx(1, 100);
    std::uniform_int_distribution<int> small(-3, 3);
    std::uniform_real_distribution<double> real(-2.0, 2.0);
    bool int_exact = true;
    double float_gap = 0.0;
    for (int pair = 0; pair < 500; ++pair) {
      const bool integer_coeffs = pair < 250;
      DirichletPoly a, b;
      for (int k = 0; k < 8; ++k) {
        cplx ca = integer_coeffs ? cplx(small(eng), small(eng)) : cplx(real(eng), real(eng));
        cplx cb = integer_coeffs ? cplx(small(eng), small(eng)) : cplx(real(eng), real(eng));
        a.add(idx(eng), ca);
        b.add(idx(eng), cb);
      }
      TorusPoly lhs = bohr_lift(a * b);
      TorusPoly rhs = poly_product(bohr_lift(a), bohr_lift(b));
      if (integer_coeffs) {
        if (!(lhs == rhs)) int_exact = false;
      } else {
        float_gap = std::max(float_gap, coeff_gap(lhs, rhs));
      }
    }
    ok = int_exact && float_gap <= 1e-12;
    return "500 pairs, int exact=" + std::string(int_exact ? "yes" : "NO") +
           ", float gap " + num(float_gap);
  });

  criterion(2, "multiplier norm and search bound", [&](bool& ok) {
    NormResult n = multiplier_norm(one_plus_2s(), p4, p2);
    SearchBound b = operator_norm_lower_bound(one_plus_2s(), p4, p2, 200);
    bool norm_ok = std::abs(n.value - six4) <= 1e-9;
    bool search_ok = b.value >= 0.9 * six4 && b.value <= n.value + 1e-9;
    ok = norm_ok && search_ok;
    return "norm " + num(n.value) + " vs " + num(six4) + ", search " + num(b.value) + " via " +
           b.witness;
  });

  criterion(3, "finite sections approach the sup norm", [&](bool& ok) {
    std::vector<double> v;
    bool monotone = true;
    for (int k = 1; k <= 10; ++k) {
      v.push_back(truncated_norm(matrix_of(one_plus_2s(), 1, std::uint64_t{1} << k)));
      if (k > 1 && v[k - 1] < v[k - 2] - 1e-12) monotone = false;
    }
    bool near = std::abs(v.back() - 2.0) <= 0.04;
    ok = monotone && near;
    return "top " + num(v.back()) + " of 2, monotone=" + (monotone ? "yes" : "NO");
  });

  criterion(4, "upward pairs admit only zero", [&](bool& ok) {
    bool kind_ok = classify(p2, p4).kind == MultiplierKind::zero_only;
    bool throws_ok = false;
    try {
      multiplier_norm(one_plus_2s(), p2, p4);
    } catch (const std::domain_error&) {
      throws_ok = true;
    }
    RefusalDiagnostic r = cross_norm_range_refusal(one_plus_2s(), p4, p2, 6);
    bool decay_ok = r.ratios.back() <= 0.5 * r.ratios.front();
    ok = kind_ok && throws_ok && decay_ok;
    return "class zero=" + std::string(kind_ok ? "yes" : "NO") + ", norm rejects=" +
           (throws_ok ? "yes" : "NO") + ", decay " + num(r.ratios.back() / r.ratios.front());
  });

  criterion(5, "essential norm brackets, three regimes", [&](bool& ok) {
    EssBracket a = ess_norm_bracket(one_plus_2s(), p4, p2);
    bool a_ok = std::abs(a.lower - std::sqrt(2.0)) <= 1e-9 && std::abs(a.upper - six4) <= 1e-9;
    EssBracket b = ess_norm_bracket(one_plus_2s(), p2, p2);
    bool b_ok = std::abs(b.lower - 2.0) <= 1e-9 && std::abs(b.upper - 2.0) <= 1e-9;
    EssBracket c = ess_norm_bracket(one_plus_2s(), p1, p1);
    double fourpi = 4.0 / std::numbers::pi;
    bool c_ok = std::abs(c.lower - fourpi) <= 3.0 * c.lower_err && std::abs(c.upper - 2.0) <= 1e-9;
    ok = a_ok && b_ok && c_ok;
    return "[" + num(a.lower) + "," + num(a.upper) + "] [" + num(b.lower) + "," + num(b.upper) +
           "] [" + num(c.lower) + "+-" + num(c.lower_err) + "," + num(c.upper) + "]";
  });

  criterion(6, "half plane cloud fills the disc", [&](bool& ok) {
    HalfPlaneGrid g;   // 400 x 400, sigma up to 10, |t| up to 50
    SpectrumReport rep = spectrum_cloud(two_plus_2s(), g);
    double outside = 0.0;
    for (const cplx& z : rep.cloud)
      outside = std::max(outside, std::abs(z - cplx{2.0, 0.0}) - 1.0);
    std::vector<cplx> disc;
    for (int r = 0; r <= 60; ++r)
      for (int a = 0; a < 120; ++a)
        disc.push_back(cplx{2.0, 0.0} + std::polar(r / 60.0, 2.0 * std::numbers::pi * a / 120.0));
    double h = std::max(directed_hausdorff(disc, rep.cloud), outside);
    ok = h < 0.05;
    return "hausdorff " + num(h) + " vs disc (limit 0.05)";
  });

  criterion(7, "boundary clouds resolve the circle", [&](bool& ok) {
    SpectrumReport rep = approximate_spectrum_cloud(two_plus_2s());
    auto vs_circle = [&](const std::vector<cplx>& cloud) {
      double off = 0.0;
      for (const cplx& z : cloud) off = std::max(off, std::abs(std::abs(z - cplx{2.0, 0.0}) - 1.0));
      std::vector<cplx> circle;
      for (int a = 0; a < 4096; ++a)
        circle.push_back(cplx{2.0, 0.0} + std::polar(1.0, 2.0 * std::numbers::pi * a / 4096.0));
      return std::max(off, directed_hausdorff(circle, cloud));
    };
    double line_h = vs_circle(rep.cloud);
    double torus_h = vs_circle(rep.torus_cloud);

    DirichletPoly d;
    d.set(1, {1.0, 0.0});
    d.set(2, {1.0, 0.0});
    d.set(3, {1.0, 0.0});
    SpectrumReport two = approximate_spectrum_cloud(d);
    ok = line_h < 0.02 && torus_h < 0.02 && two.cross_hausdorff < 0.05;
    return "line " + num(line_h) + ", torus " + num(torus_h) + ", two-variable agreement " +
           num(two.cross_hausdorff);
  });

  criterion(8, "closed range certificates with cross check", [&](bool& ok) {
    RangeCertificate yes = closed_range_certificate(two_plus_2s(), cplx{0.0, 0.0});
    RangeCertificate no = closed_range_certificate(one_plus_2s(), cplx{0.0, 0.0});
    bool yes_ok = yes.closed && std::abs(yes.bound_m - 1.0) <= 1e-6 && yes.agreement <= 1e-4;
    bool no_ok = !no.closed && no.bound_m <= 1e-6 && no.agreement <= 1e-4;
    ok = yes_ok && no_ok;
    return "m=" + num(yes.bound_m) + " agree " + num(yes.agreement) + "; m=" + num(no.bound_m) +
           " agree " + num(no.agreement);
  });

  criterion(9, "commutation test separates true operators", [&](bool& ok) {
    std::mt19937_64 eng(77);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> amp(1e-6, 1.0);
    int passed = 0, caught = 0;
    std::vector<OperatorMatrix> kept;
    for (int trial = 0; trial < 50; ++trial) {
      DirichletPoly d;
      std::size_t budget = 2 + trial % 2;
      std::uint64_t cutoff = 32 + 32 * (trial % 3);
      auto base = smooth_basis(budget, 12);
      for (std::uint64_t n : base)
        if (eng() % 2) d.set(n, {gauss(eng), gauss(eng)});
      if (d.is_zero()) d.set(2, {1.0, 0.0});
      OperatorMatrix m = matrix_of(d, budget, cutoff);
      if (commutant_test(m, 1e-12).commutes) ++passed;
      kept.push_back(std::move(m));
    }
    for (int trial = 0; trial < 100; ++trial) {
      OperatorMatrix bad = kept[trial % kept.size()];
      std::size_t dim = bad.dim();
      std::size_t i = eng() % dim;
      std::size_t j = 1 + eng() % (dim - 1);
      bad.a[i * dim + j] += cplx{amp(eng), 0.0};
      if (!commutant_test(bad, 1e-12).commutes) ++caught;
    }
    ok = passed == 50 && caught == 100;
    return std::to_string(passed) + "/50 genuine pass, " + std::to_string(caught) +
           "/100 perturbed caught";
  });

  criterion(10, "point bounds and the extremal witness", [&](bool& ok) {
    std::mt19937_64 eng(404);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> rad(0.0, 0.8);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    EngineConfig cfg;
    cfg.samples = 4096;
    int held = 0;
    const int total = 1000;
    for (int trial = 0; trial < total; ++trial) {
      DirichletPoly d;
      for (std::uint64_t n : {1ull, 2ull, 3ull, 4ull, 5ull, 6ull, 8ull, 9ull, 10ull, 12ull})
        if (eng() % 3) d.set(n, {gauss(eng), gauss(eng)});
      if (d.is_zero()) d.set(2, {1.0, 0.0});
      TorusPoly f = bohr_lift(d);
      std::vector<cplx> z;
      for (std::size_t j = 0; j < f.nvars(); ++j) z.push_back(std::polar(rad(eng), ang(eng)));
      PExponent p = trial % 10 < 7 ? (trial % 2 ? p2 : p4)
                                   : (trial % 3 == 0 ? p1
                                                     : (trial % 3 == 1 ? PExponent::integer(3)
                                                                       : PExponent::ratio(5, 2)));
      CgCheck c = cg_bound(f, p, z, cfg);
      if (c.lhs <= c.rhs + 3.0 * c.norm_err * cg_growth_factor(z, p) + 1e-9) ++held;
    }
    ExtremalSpec spec;
    spec.z = {cplx{0.5, 0.0}};
    spec.p = p2;
    TorusPoly w = extremal_function(spec, 40);
    double nrm = norm_h2(w);
    double attained = std::abs(eval_lift(w, spec.z));
    bool pinned = std::abs(nrm - 1.0) <= 1e-9 &&
                  std::abs(attained - std::sqrt(4.0 / 3.0)) <= 1e-9;
    ok = held == total && pinned;
    return std::to_string(held) + "/1000 bounds held, witness norm " + num(nrm) + " value " +
           num(attained);
  });

  criterion(11, "mean sections contract and converge", [&](bool& ok) {
    std::mt19937_64 eng(555);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<std::uint32_t> ex(0, 5);
    EngineConfig cfg;
    cfg.samples = std::int64_t{1} << 13;
    int contracted = 0, bounded = 0;
    const int total = 100;
    for (int trial = 0; trial < total; ++trial) {
      std::size_t nv = 1 + trial % 3;
      TorusPoly f(nv);
      for (int k = 0; k < 8; ++k) {
        std::vector<std::uint32_t> alpha(nv);
        for (auto& aa : alpha) aa = ex(eng);
        f.add(MultiIndex::from_exponents(alpha), {gauss(eng), gauss(eng)});
      }
      if (f.is_zero()) f.set(MultiIndex::from_exponents(std::vector<std::uint32_t>(nv, 1)),
                             {1.0, 0.0});
      int order = 1 + trial % 4;
      FejerSpec spec{order, static_cast<int>(nv)};
      cfg.seed = 0x5EED + trial;
      NormResult nf = norm_auto(f, p1, cfg);
      NormResult ng = norm_auto(fejer_apply(f, spec), p1, cfg);
      if (ng.value <= nf.value + 3.0 * (nf.std_error + ng.std_error)) ++contracted;

      std::uint32_t dmax = 0;
      for (std::size_t j = 1; j <= nv; ++j) dmax = std::max(dmax, f.degree_of_var(j));
      double lhs = norm_h2(fejer_remainder(f, spec));
      double rhs = static_cast<double>(nv) * dmax / (order + 1.0) * norm_h2(f);
      if (lhs <= rhs + 1e-12) ++bounded;
    }

    EngineConfig acfg;
    acfg.samples = std::int64_t{1} << 15;
    TorusPoly base = bohr_lift(one_plus_2s());
    double prev = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    double last = 0.0;
    for (double r : {0.9, 0.99, 0.999}) {
      ExtremalSpec espec;
      espec.z = {cplx{r, 0.0}};
      espec.p = p1;
      TorusPoly h = extremal_function_near_boundary(espec, 64);
      NormResult m = norm_auto(fejer_apply(poly_product(base, h), {4, 1}), p1, acfg);
      if (m.value >= prev) decreasing = false;
      prev = m.value;
      last = m.value;
    }
    ok = contracted == total && bounded == total && decreasing;
    return std::to_string(contracted) + "/100 contract, " + std::to_string(bounded) +
           "/100 coefficient bound, peak decay " + (decreasing ? "yes" : "NO") + " to " +
           num(last);
  });

  criterion(12, "independent norm routes agree", [&](bool& ok) {
    DirichletPoly d = one_plus_2s();
    EngineConfig cfg;
    cfg.samples = std::int64_t{1} << 16;
    bool all = true;
    std::string detail;
    for (PExponent p : {p1, p2, p4}) {
      std::vector<std::pair<double, double>> routes;   // value, stderr
      if (p == p2)
        routes.push_back({norm_h2(d), 0.0});
      else if (p.is_even_integer())
        routes.push_back({norm_hp_even(d, static_cast<int>(p.num)), 0.0});
      TorusPoly f = bohr_lift(d);
      Estimate e = norm_hp_qmc(f, p, {f.nvars(), cfg.samples, cfg.seed});
      routes.push_back({e.value, e.std_error});
      routes.push_back({norm_vertical_line(d, p, 1e4, 400000), 0.0});
      for (std::size_t a = 0; a < routes.size(); ++a)
        for (std::size_t b = a + 1; b < routes.size(); ++b) {
          double gap = std::abs(routes[a].first - routes[b].first);
          double tol = std::max(3.0 * (routes[a].second + routes[b].second),
                                0.02 * std::max(routes[a].first, routes[b].first));
          if (gap > tol) all = false;
        }
      detail += "p=" + p.str() + ":" + num(routes.front().first) + " ";
    }
    ok = all;
    return detail + (all ? "(pairwise within tolerance)" : "(ROUTE MISMATCH)");
  });

  std::printf("%s: %d of 12 criteria pass\n", failures == 0 ? "acceptance" : "ACCEPTANCE",
              12 - failures);
  return failures;
}
