#pragma once

// Self-check battery: every computational route in the library is exercised
// against an independent value (closed form, second route, or invariance).
// quick mode shrinks sample counts; tolerances that depend on sample counts
// scale through the reported standard errors.

#include <functional>
#include <ostream>

#include "dirichlet/colegamelin.hpp"
#include "dirichlet/fejer.hpp"
#include "dirichlet/serialize.hpp"

namespace dirichlet {

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  bool has_metric = false;   // headline scalar, when one exists
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool quick = false;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  int failures() const {
    int n = 0;
    for (const auto& c : checks)
      if (!c.pass) ++n;
    return n;
  }
};

inline void to_json(json& j, const VerifyCheck& c) {
  j = json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
  if (c.has_metric) {
    j["measured"] = c.measured;
    j["expected"] = c.expected;
    j["tolerance"] = c.tolerance;
  }
}

inline void to_json(json& j, const VerifyReport& r) {
  j = json{{"quick", r.quick}, {"failures", r.failures()}, {"checks", r.checks}};
}

namespace detail {

inline std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline DirichletPoly random_smooth_poly(std::uint64_t seed, int terms = 6) {
  std::mt19937_64 eng(mix64(seed));
  auto pw = [](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
  };
  DirichletPoly d;
  d.set(1, gaussian_from(eng));
  for (int i = 0; i < terms; ++i) {
    std::uint64_t n = pw(2, eng() % 4) * pw(3, eng() % 3) * pw(5, eng() % 2);
    d.add(n, gaussian_from(eng));
  }
  return d;
}

inline double max_coeff_diff(const TorusPoly& a, const TorusPoly& b) {
  double worst = 0.0;
  for (const auto& [k, c] : a.terms()) worst = std::max(worst, std::abs(c - b.at(k)));
  for (const auto& [k, c] : b.terms()) worst = std::max(worst, std::abs(c - a.at(k)));
  return worst;
}

}  // namespace detail

// Runs the battery; logs one line per check to `log` when given.
inline VerifyReport run_verify(EngineConfig cfg = {}, bool quick = false,
                               std::ostream* log = nullptr) {
  using detail::fmt_num;
  VerifyReport rep;
  rep.quick = quick;
  if (quick) cfg.samples = std::max<std::int64_t>(1024, cfg.samples / 16);

  VerifyCheck* cur = nullptr;
  auto run = [&](const std::string& name, const std::function<std::string()>& body) {
    VerifyCheck c;
    c.name = name;
    cur = &c;
    try {
      c.detail = body();
      c.pass = true;
    } catch (const std::exception& e) {
      c.detail = e.what();
      c.pass = false;
    }
    cur = nullptr;
    if (log)
      *log << (c.pass ? "ok   " : "FAIL ") << c.name
           << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
    rep.checks.push_back(std::move(c));
  };
  auto metric = [&](double measured, double expected, double tolerance) {
    if (!cur) return;
    cur->has_metric = true;
    cur->measured = measured;
    cur->expected = expected;
    cur->tolerance = tolerance;
  };
  auto expect = [](bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
  };

  const DirichletPoly one_plus_2s = parse_series("1 + 2^-s");
  const PExponent p1 = PExponent::integer(1), p2 = PExponent::integer(2),
                  p4 = PExponent::integer(4), pinf = PExponent::infinity();
  const double root4_6 = std::pow(6.0, 0.25);

  run("prime-table", [&] {
    expect(prime(1) == 2 && prime(2) == 3 && prime(25) == 97, "small primes wrong");
    for (std::size_t k = 1; k <= 1000; ++k)
      expect(prime_index(prime(k)) == k, "prime_index(prime(k)) != k");
    return std::string{};
  });

  run("factorize-roundtrip", [&] {
    for (std::uint64_t n = 1; n <= 20000; ++n) {
      MultiIndex mi = factorize(n);
      expect(unfactorize(mi) == n, "roundtrip failed at " + std::to_string(n));
      const auto& fs = mi.factors();
      for (std::size_t i = 1; i < fs.size(); ++i)
        expect(fs[i - 1].p < fs[i].p, "factors out of order");
    }
    std::uint64_t big = 9007199254740997ULL;
    const MultiIndex mbig = factorize(big);
    const auto& fs = mbig.factors();
    expect(fs.size() == 1 && fs[0].p == big && fs[0].e == 1, "large prime misfactored");
    return std::string{};
  });

  run("lift-multiplicative", [&] {
    const int pairs = quick ? 50 : 200;
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
      DirichletPoly a = detail::random_smooth_poly(cfg.seed ^ (2 * i + 1));
      DirichletPoly b = detail::random_smooth_poly(cfg.seed ^ (2 * i + 2));
      TorusPoly lhs = bohr_lift(a * b);
      TorusPoly rhs = poly_product(bohr_lift(a), bohr_lift(b));
      worst = std::max(worst, detail::max_coeff_diff(lhs, rhs));
      expect(bohr_transform(bohr_lift(a)) == a, "transform(lift) != id");
    }
    metric(worst, 0.0, 1e-12);
    expect(worst <= 1e-12, "product mismatch " + fmt_num(worst));
    return "max diff " + fmt_num(worst);
  });

  run("l2-exact", [&] {
    double v = norm_h2(one_plus_2s);
    metric(v, std::sqrt(2.0), 1e-15);
    expect(std::abs(v - std::sqrt(2.0)) <= 1e-15, "got " + fmt_num(v));
    DirichletPoly d = detail::random_smooth_poly(cfg.seed ^ 77);
    double direct = 0.0;
    for (const auto& [n, c] : d.terms()) direct += std::norm(c);
    expect(std::abs(norm_h2(d) - std::sqrt(direct)) <= 1e-12, "coefficient sum mismatch");
    return std::string{};
  });

  run("even-norm-exact", [&] {
    double v = norm_hp_even(one_plus_2s, 4);
    metric(v, root4_6, 1e-12);
    expect(std::abs(v - root4_6) <= 1e-12, "got " + fmt_num(v));
    return "||1+2^-s||_4 = " + fmt_num(v);
  });

  run("qmc-vs-exact", [&] {
    SamplePlan plan{1, cfg.samples, cfg.seed, SampleScheme::random_uniform};
    Estimate e = norm_hp_qmc(bohr_lift(one_plus_2s), p4, plan);
    double err = std::abs(e.value - root4_6);
    metric(e.value, root4_6, 6.0 * e.std_error);
    expect(err <= 6.0 * e.std_error, "off by " + fmt_num(err) + " vs stderr " + fmt_num(e.std_error));
    return "err " + fmt_num(err) + ", stderr " + fmt_num(e.std_error);
  });

  run("lattice-exact-univariate", [&] {
    SamplePlan plan{1, 4096, cfg.seed, SampleScheme::rank1_lattice};
    Estimate e = norm_hp_qmc(bohr_lift(one_plus_2s), p4, plan);
    metric(e.value, root4_6, 1e-9);
    expect(std::abs(e.value - root4_6) <= 1e-9, "got " + fmt_num(e.value));
    return std::string{};
  });

  run("sup-norm-grid", [&] {
    DirichletPoly d = parse_series("(1 + 2^-s) * (1 + 3^-s)");
    SupNorm s = norm_hinf(d, cfg);
    metric(s.value, 4.0, 1e-8);
    expect(std::abs(s.value - 4.0) <= 1e-8, "got " + fmt_num(s.value));
    TorusPoly f = bohr_lift(d), g;
    g.set_nvars(f.nvars());
    for (const auto& [k, c] : f.terms()) {
      double ang = 0.37 * k.exponent(2) + 1.1 * k.exponent(3);
      g.set(k, c * std::polar(1.0, ang));
    }
    SupNorm sr = norm_hinf(g, cfg);
    expect(std::abs(sr.value - s.value) <= 1e-8,
           "rotation moved sup by " + fmt_num(sr.value - s.value));
    return "sup " + fmt_num(s.value);
  });

  run("vertical-line-route", [&] {
    double v = norm_vertical_line(one_plus_2s, p2, 1e4, quick ? 100000 : 400000);
    metric(v, std::sqrt(2.0), 1e-3);
    expect(std::abs(v - std::sqrt(2.0)) <= 1e-3, "got " + fmt_num(v));
    return "||.||_2 on the line = " + fmt_num(v);
  });

  run("exponent-arithmetic", [&] {
    expect(multiplier_exponent(p4, p2) == p4, "t(4,2) != 4");
    expect(multiplier_exponent(PExponent::integer(3), p2) == PExponent::integer(6), "t(3,2) != 6");
    expect(multiplier_exponent(PExponent::ratio(5, 2), p2) == PExponent::integer(10),
           "t(5/2,2) != 10");
    expect(multiplier_exponent(pinf, p2) == p2, "t(inf,2) != 2");
    expect(classify(p4, p2).name() == "H4", "classify(4,2)");
    expect(classify(p2, p2).name() == "Hinf", "classify(2,2)");
    expect(classify(p2, p4).kind == MultiplierKind::zero_only, "classify(2,4)");
    expect(classify(pinf, p2).name() == "H2", "classify(inf,2)");
    return std::string{};
  });

  run("multiplier-norm-isometry", [&] {
    NormResult r = multiplier_norm(one_plus_2s, p4, p2, cfg);
    metric(r.value, root4_6, 1e-9);
    expect(std::abs(r.value - root4_6) <= 1e-9, "got " + fmt_num(r.value));
    return "M(4,2) norm = " + fmt_num(r.value) + " via " + r.method;
  });

  run("no-upward-multipliers", [&] {
    bool threw = false;
    try {
      multiplier_norm(one_plus_2s, p2, p4, cfg);
    } catch (const std::domain_error&) {
      threw = true;
    }
    expect(threw, "nonzero multiplier accepted for q > p");
    NormResult z = multiplier_norm(DirichletPoly{}, p2, p4, cfg);
    expect(z.value == 0.0, "zero multiplier norm not 0");
    return std::string{};
  });

  run("lower-bound-search", [&] {
    NormResult exact = multiplier_norm(one_plus_2s, p4, p2, cfg);
    SearchBound b = operator_norm_lower_bound(one_plus_2s, p4, p2, quick ? 20 : 60, cfg);
    metric(b.value, exact.value, 0.1 * exact.value);
    expect(b.value <= exact.value + 1e-6,
           "lower bound " + fmt_num(b.value) + " above norm " + fmt_num(exact.value));
    expect(b.value >= 0.9 * exact.value,
           "lower bound " + fmt_num(b.value) + " below 0.9 norm, witness " + b.witness);
    return "bound " + fmt_num(b.value) + " of " + fmt_num(exact.value) + " via " + b.witness;
  });

  run("essential-brackets", [&] {
    EssBracket b42 = ess_norm_bracket(one_plus_2s, p4, p2, cfg);
    expect(std::abs(b42.lower - std::sqrt(2.0)) <= 1e-9, "lower(4,2) " + fmt_num(b42.lower));
    expect(std::abs(b42.upper - root4_6) <= 1e-9, "upper(4,2) " + fmt_num(b42.upper));
    EssBracket b22 = ess_norm_bracket(one_plus_2s, p2, p2, cfg);
    expect(std::abs(b22.lower - 2.0) <= 1e-8 && std::abs(b22.upper - 2.0) <= 1e-8,
           "bracket(2,2) [" + fmt_num(b22.lower) + ", " + fmt_num(b22.upper) + "]");
    EssBracket b11 = ess_norm_bracket(one_plus_2s, p1, p1, cfg);
    double fourpi = 4.0 / 3.14159265358979323846;
    metric(b11.lower, fourpi, std::max(8.0 * b11.lower_err, 2e-3));
    expect(std::abs(b11.lower - fourpi) <= std::max(8.0 * b11.lower_err, 2e-3),
           "lower(1,1) " + fmt_num(b11.lower));
    expect(std::abs(b11.upper - 2.0) <= 1e-8, "upper(1,1) " + fmt_num(b11.upper));
    expect(!b42.compact && ess_norm_bracket(DirichletPoly{}, p4, p2, cfg).compact,
           "compactness flag");
    return std::string{};
  });

  run("truncated-norm-formula", [&] {
    // on the basis {1,2,...,2^(k-1)} the matrix of 1 + 2^-s is bidiagonal of
    // ones and its largest singular value is 2 cos(pi/(2k+1))
    auto m6 = matrix_of(one_plus_2s, 1, 64);
    double v = truncated_norm(m6);
    double k = static_cast<double>(m6.dim());
    double closed = 2.0 * std::cos(3.14159265358979323846 / (2.0 * k + 1.0));
    metric(v, closed, 1e-9);
    expect(std::abs(v - closed) <= 1e-9, "got " + fmt_num(v) + " want " + fmt_num(closed));
    double prev = truncated_norm(matrix_of(one_plus_2s, 1, 8));
    expect(prev < v && v < 2.0, "not monotone toward 2");
    return "sigma_max = " + fmt_num(v);
  });

  run("commutant-detects", [&] {
    for (int trial = 0; trial < (quick ? 3 : 8); ++trial) {
      DirichletPoly d = restrict_primes(detail::random_smooth_poly(cfg.seed ^ (900 + trial)), 3);
      OperatorMatrix m = matrix_of(d, 3, 64);
      CommutantReport ok = commutant_test(m, 1e-12);
      expect(ok.commutes, "true matrix rejected, violation " + fmt_num(ok.max_violation));
      std::size_t col = 1;  // n_j = 2: inside every tested window
      OperatorMatrix bad = m;
      bad.a[3 * m.dim() + col] += 0.1;
      expect(!commutant_test(bad, 1e-12).commutes, "perturbed matrix accepted");
    }
    return std::string{};
  });

  run("spectrum-disk", [&] {
    DirichletPoly d = parse_series("2 + 2^-s");
    HalfPlaneGrid g;
    g.sigma_count = quick ? 120 : 400;
    g.t_count = quick ? 280 : 400;
    SpectrumReport sp = spectrum_cloud(d, g);
    for (const cplx& z : sp.cloud)
      expect(std::abs(z - 2.0) <= 1.0 + 1e-9, "point outside the disk");
    std::vector<cplx> disk;
    for (int i = 1; i <= 60; ++i)
      for (int k = 0; k < 120; ++k)
        disk.push_back(2.0 + std::polar(i / 60.0, 2.0 * 3.14159265358979323846 * k / 120.0));
    double h = hausdorff_distance(sp.cloud, disk);
    metric(h, 0.0, 0.05);
    expect(h <= 0.05, "hausdorff to disk " + fmt_num(h));
    return "hausdorff " + fmt_num(h);
  });

  run("boundary-spectrum-circle", [&] {
    DirichletPoly d = parse_series("2 + 2^-s");
    BoundaryGrid g;
    g.t_max = 1e3;
    g.t_count = quick ? 20000 : 100000;
    SpectrumReport sp = approximate_spectrum_cloud(d, g);
    for (const cplx& z : sp.cloud)
      expect(std::abs(std::abs(z - 2.0) - 1.0) <= 1e-9, "line point off the circle");
    metric(sp.cross_hausdorff, 0.0, 0.05);
    expect(sp.cross_hausdorff <= 0.05, "clouds disagree by " + fmt_num(sp.cross_hausdorff));
    return "cross hausdorff " + fmt_num(sp.cross_hausdorff);
  });

  run("closed-range-certificates", [&] {
    RangeCertificate yes = closed_range_certificate(parse_series("2 + 2^-s"), cplx{0.0, 0.0}, cfg);
    metric(yes.bound_m, 1.0, 1e-6);
    expect(yes.closed && std::abs(yes.bound_m - 1.0) <= 1e-6, "m " + fmt_num(yes.bound_m));
    expect(yes.agreement <= 1e-3, "line disagrees by " + fmt_num(yes.agreement));
    RangeCertificate no = closed_range_certificate(one_plus_2s, cplx{0.0, 0.0}, cfg);
    expect(!no.closed && no.bound_m <= 1e-6, "vanishing symbol called closed");
    return "m = " + fmt_num(yes.bound_m);
  });

  run("cross-norm-refusal", [&] {
    RefusalDiagnostic r = cross_norm_range_refusal(one_plus_2s, p4, p2, quick ? 4 : 5, cfg);
    for (std::size_t i = 1; i < r.ratios.size(); ++i)
      expect(r.ratios[i] < r.ratios[i - 1], "ratios not decreasing");
    metric(r.ratios.back() / r.ratios.front(), 0.0, 0.6);
    expect(r.ratios.back() <= 0.6 * r.ratios.front(),
           "weak decay: " + fmt_num(r.ratios.back() / r.ratios.front()));
    return "last/first = " + fmt_num(r.ratios.back() / r.ratios.front());
  });

  run("fejer-contraction", [&] {
    MultiIndex a = MultiIndex::from_exponents({2, 1});
    expect(std::abs(fejer_weight(a, 4) - (1.0 - 2.0 / 5.0) * (1.0 - 1.0 / 5.0)) <= 1e-15,
           "weight formula");
    expect(fejer_weight(MultiIndex::from_exponents({5}), 4) == 0.0, "cut weight not 0");
    for (int trial = 0; trial < (quick ? 4 : 12); ++trial) {
      TorusPoly f = bohr_lift(detail::random_smooth_poly(cfg.seed ^ (40 + trial)));
      FejerSpec spec{3, static_cast<int>(f.nvars())};
      TorusPoly g = fejer_apply(f, spec);
      expect(norm_h2(g) <= norm_h2(f) + 1e-12, "mean expanded the l2 norm");
      TorusPoly back = fejer_remainder(f, spec);
      back += g;
      expect(detail::max_coeff_diff(back, f) <= 1e-12, "apply + remainder != id");
    }
    return std::string{};
  });

  run("point-evaluation-bound", [&] {
    std::mt19937_64 eng(detail::mix64(cfg.seed ^ 0xC6));
    for (int trial = 0; trial < (quick ? 10 : 40); ++trial) {
      TorusPoly f = bohr_lift(detail::random_smooth_poly(cfg.seed ^ (500 + trial)));
      std::vector<cplx> z;
      for (std::size_t j = 0; j < f.nvars(); ++j)
        z.push_back(std::polar(0.8 * detail::unit_from_bits(eng()),
                               6.28 * detail::unit_from_bits(eng())));
      PExponent p = (trial % 2 == 0) ? p2 : p4;
      CgCheck c = cg_bound(f, p, z, cfg);
      expect(c.lhs <= c.rhs * (1.0 + 1e-12) + 1e-12,
             "bound violated: " + fmt_num(c.lhs) + " > " + fmt_num(c.rhs));
    }
    ExtremalSpec spec{{cplx{0.5, 0.0}}, p2};
    TorusPoly f = extremal_function(spec, 40);
    expect(std::abs(norm_h2(f) - 1.0) <= 1e-9, "extremal not unit");
    double attained = std::abs(eval_lift(f, spec.z));
    metric(attained, std::sqrt(4.0 / 3.0), 1e-9);
    expect(std::abs(attained - std::sqrt(4.0 / 3.0)) <= 1e-9,
           "attained " + fmt_num(attained));
    return "extremal value " + fmt_num(attained);
  });

  run("parse-print-roundtrip", [&] {
    const char* exprs[] = {"1 + 2^-s", "(1 + 2^-s) * (1 - 3i*5^-s)", "-2.5e-1 * 7^-s + i",
                           "(1+i)*(1-i) + 9007199254740997^-s"};
    for (const char* e : exprs) {
      DirichletPoly d = parse_series(e);
      expect(parse_series(print_series(d)) == d, std::string("roundtrip failed on ") + e);
    }
    return std::string{};
  });

  run("json-roundtrip", [&] {
    DirichletPoly d = detail::random_smooth_poly(cfg.seed ^ 3210);
    json jd = d;
    expect(jd.get<DirichletPoly>() == d, "series json roundtrip");
    TorusPoly f = bohr_lift(d);
    json jf = f;
    expect(jf.get<TorusPoly>() == f, "polynomial json roundtrip");
    return std::string{};
  });

  run("seeded-determinism", [&] {
    SamplePlan plan{2, 8192, cfg.seed, SampleScheme::random_uniform};
    TorusPoly f = bohr_lift(parse_series("1 + 2^-s + 3^-s"));
    Estimate a = norm_hp_qmc(f, PExponent::integer(3), plan);
    Estimate b = norm_hp_qmc(f, PExponent::integer(3), plan);
    expect(a.value == b.value && a.std_error == b.std_error, "same plan, different result");
    return std::string{};
  });

  return rep;
}

}  // namespace dirichlet
