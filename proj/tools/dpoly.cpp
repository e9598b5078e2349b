// dpoly: command-line front end. Machine-readable JSON goes to stdout; human
// summaries go to stderr under --pretty. Exit code 0 on success, 1 on any
// error, and for `verify` 0 iff every check passed.

#include <CLI11.hpp>
#include <iostream>

#include "dirichlet/verify.hpp"

namespace dp = dirichlet;

namespace {

struct Opts {
  std::string series;
  std::string p = "2";
  std::string q;
  std::string config_path;
  std::string out;
  std::string out_torus;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
  int grid = 0;
  double refine_tol = 0.0;
  bool pretty = false;
  bool json_out = true;
};

void add_common(CLI::App* sub, Opts& o, bool needs_series) {
  auto* s = sub->add_option("--series", o.series,
                            "Dirichlet series: expression, inline JSON, or .json file");
  if (needs_series) s->required();
  sub->add_option("--seed", o.seed, "RNG seed");
  sub->add_option("--samples", o.samples, "QMC sample count");
  sub->add_option("--grid", o.grid, "phase grid resolution per variable (0 = auto)");
  sub->add_option("--refine-tol", o.refine_tol, "phase refinement tolerance");
  sub->add_option("--config", o.config_path, "engine config JSON file");
  sub->add_flag("--pretty", o.pretty, "human-readable summary on stderr");
  sub->add_flag("--json,!--no-json", o.json_out, "JSON on stdout (default on)");
}

dp::EngineConfig engine_config(const CLI::App* sub, const Opts& o) {
  dp::EngineConfig cfg;
  if (!o.config_path.empty()) cfg = dp::load_config(o.config_path);
  if (sub->count("--seed")) cfg.seed = o.seed;
  if (sub->count("--samples")) cfg.samples = o.samples;
  if (sub->count("--grid")) cfg.grid = o.grid;
  if (sub->count("--refine-tol")) cfg.refine_tol = o.refine_tol;
  return cfg;
}

void emit(const dp::json& j, const Opts& o) {
  if (o.json_out) std::cout << j.dump(2) << "\n";
}

// exact|qmc|grid, the coarse labels; finer route names stay in "route"
std::string coarse_method(const std::string& route) {
  if (route == "qmc") return "qmc";
  if (route == "grid-sup") return "grid";
  return "exact";
}

dp::cplx parse_complex(const std::string& s) {
  auto comma = s.find(',');
  if (comma != std::string::npos)
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  if (!s.empty() && s.back() == 'i') {
    std::string head = s.substr(0, s.size() - 1);
    if (head.empty() || head == "+" || head == "-") head += "1";
    return {0.0, std::stod(head)};
  }
  return {std::stod(s), 0.0};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet polynomial norms, multipliers, spectra, and certificates"};
  app.require_subcommand(1);
  Opts o;
  int rc = 0;

  // --- norm ------------------------------------------------------------
  auto* c_norm = app.add_subcommand("norm", "H_p norm of a series");
  add_common(c_norm, o, true);
  c_norm->add_option("--p", o.p, "exponent (rational or inf)");
  c_norm->callback([&] {
    auto cfg = engine_config(c_norm, o);
    dp::DirichletPoly d = dp::series_from_arg(o.series);
    dp::PExponent p = dp::PExponent::parse(o.p);
    dp::NormResult r = dp::norm_auto(d, p, cfg);
    dp::json j{{"p", p.str()},
               {"value", r.value},
               {"stderr", r.std_error},
               {"method", coarse_method(r.method)},
               {"route", r.method}};
    emit(j, o);
    if (o.pretty)
      std::cerr << "||D||_" << p.str() << " = " << r.value << "  (" << r.method
                << ", stderr " << r.std_error << ")\n";
  });

  // --- hinf ------------------------------------------------------------
  auto* c_hinf = app.add_subcommand("hinf", "sup norm with a witness point");
  add_common(c_hinf, o, true);
  c_hinf->callback([&] {
    auto cfg = engine_config(c_hinf, o);
    dp::SupNorm s = dp::norm_hinf(dp::series_from_arg(o.series), cfg);
    dp::json j{{"p", "inf"},
               {"value", s.value},
               {"method", "grid"},
               {"phase_tol", s.phase_tol},
               {"omega", s.omega}};
    emit(j, o);
    if (o.pretty)
      std::cerr << "||D||_inf = " << s.value << "  (phase tol " << s.phase_tol << ")\n";
  });

  // --- mult-norm ---------------------------------------------------------
  auto* c_mult = app.add_subcommand("mult-norm", "multiplier norm H_p -> H_q");
  add_common(c_mult, o, true);
  c_mult->add_option("--p", o.p, "source exponent")->required();
  c_mult->add_option("--q", o.q, "target exponent")->required();
  c_mult->callback([&] {
    auto cfg = engine_config(c_mult, o);
    dp::DirichletPoly d = dp::series_from_arg(o.series);
    dp::PExponent p = dp::PExponent::parse(o.p), q = dp::PExponent::parse(o.q);
    dp::MultiplierClass mc = dp::classify(p, q);
    dp::NormResult r = dp::multiplier_norm(d, p, q, cfg);
    dp::json j{{"lower", r.value - r.std_error},
               {"value", r.value},
               {"upper", r.value + r.std_error},
               {"regime", mc.name()},
               {"stderr", r.std_error},
               {"method", coarse_method(r.method)}};
    emit(j, o);
    if (o.pretty)
      std::cerr << "multiplier space " << mc.name() << ", norm = " << r.value << "\n";
  });

  // --- ess-bracket -------------------------------------------------------
  auto* c_ess = app.add_subcommand("ess-bracket", "essential-norm bracket H_p -> H_q");
  add_common(c_ess, o, true);
  c_ess->add_option("--p", o.p, "source exponent")->required();
  c_ess->add_option("--q", o.q, "target exponent")->required();
  c_ess->callback([&] {
    auto cfg = engine_config(c_ess, o);
    dp::DirichletPoly d = dp::series_from_arg(o.series);
    dp::EssBracket b =
        dp::ess_norm_bracket(d, dp::PExponent::parse(o.p), dp::PExponent::parse(o.q), cfg);
    dp::json j{{"lower", b.lower},
               {"value", 0.5 * (b.lower + b.upper)},
               {"upper", b.upper},
               {"regime", dp::regime_name(b.regime)},
               {"lower_stderr", b.lower_err},
               {"upper_stderr", b.upper_err},
               {"compact", b.compact}};
    emit(j, o);
    if (o.pretty)
      std::cerr << "essential norm in [" << b.lower << ", " << b.upper << "]  ("
                << dp::regime_name(b.regime) << ")\n";
  });

  // --- op-norm -----------------------------------------------------------
  auto* c_opn = app.add_subcommand("op-norm", "operator norm with a searched lower bound");
  add_common(c_opn, o, true);
  c_opn->add_option("--p", o.p, "source exponent")->required();
  c_opn->add_option("--q", o.q, "target exponent")->required();
  int trials = 50;
  c_opn->add_option("--trials", trials, "random candidates to try");
  c_opn->callback([&] {
    auto cfg = engine_config(c_opn, o);
    dp::DirichletPoly d = dp::series_from_arg(o.series);
    dp::PExponent p = dp::PExponent::parse(o.p), q = dp::PExponent::parse(o.q);
    dp::NormResult r = dp::multiplier_norm(d, p, q, cfg);
    dp::SearchBound b = dp::operator_norm_lower_bound(d, p, q, trials, cfg);
    dp::json j{{"lower", b.value},
               {"value", r.value},
               {"upper", r.value + r.std_error},
               {"regime", dp::classify(p, q).name()},
               {"witness", b.witness},
               {"evaluations", b.evaluations}};
    emit(j, o);
    if (o.pretty)
      std::cerr << "norm = " << r.value << ", searched lower bound = " << b.value << " ("
                << b.witness << ")\n";
  });

  // --- commutant-test ------------------------------------------------------
  auto* c_comm = app.add_subcommand("commutant-test", "shift-commutation test of the matrix");
  add_common(c_comm, o, true);
  std::size_t prime_budget = 3;
  std::uint64_t cutoff = 64;
  double tol = 1e-12;
  c_comm->add_option("--prime-budget", prime_budget, "number of primes in the basis");
  c_comm->add_option("--cutoff", cutoff, "largest basis index");
  c_comm->add_option("--tol", tol, "violation tolerance");
  c_comm->callback([&] {
    dp::DirichletPoly d = dp::series_from_arg(o.series);
    dp::OperatorMatrix m = dp::matrix_of(d, prime_budget, cutoff);
    dp::CommutantReport r = dp::commutant_test(m, tol);
    dp::json j = r;
    j["dim"] = m.dim();
    emit(j, o);
    if (o.pretty)
      std::cerr << (r.commutes ? "commutes" : "violates") << ", max violation "
                << r.max_violation << "\n";
  });

  // --- spectrum ------------------------------------------------------------
  auto* c_spec = app.add_subcommand("spectrum", "half-plane image cloud");
  add_common(c_spec, o, true);
  dp::HalfPlaneGrid hgrid;
  c_spec->add_option("--sigma-max", hgrid.sigma_max, "largest real part");
  c_spec->add_option("--sigma-count", hgrid.sigma_count, "real-axis nodes");
  c_spec->add_option("--t-max", hgrid.t_max, "imaginary range half-width");
  c_spec->add_option("--t-count", hgrid.t_count, "imaginary-axis nodes");
  c_spec->add_option("--out", o.out, "CSV path for the cloud (re,im)");
  c_spec->callback([&] {
    dp::DirichletPoly d = dp::series_from_arg(o.series);
    dp::SpectrumReport rep = dp::spectrum_cloud(d, hgrid);
    if (!o.out.empty()) dp::write_cloud_csv(o.out, rep.cloud);
    dp::json j = dp::spectrum_summary(rep);
    j["closed"] = nullptr;
    j["m"] = nullptr;
    emit(j, o);
    if (o.pretty)
      std::cerr << rep.cloud.size() << " points, hull bound " << rep.hull_bound << "\n";
  });

  // --- ap-spectrum -----------------------------------------------------------
  auto* c_aps = app.add_subcommand("ap-spectrum", "boundary image clouds, line and torus");
  add_common(c_aps, o, true);
  dp::BoundaryGrid bgrid;
  c_aps->add_option("--t-max", bgrid.t_max, "line scan half-width");
  c_aps->add_option("--t-count", bgrid.t_count, "line samples");
  c_aps->add_option("--torus-grid", bgrid.torus_grid, "phase resolution per variable");
  c_aps->add_option("--out", o.out, "CSV path for the line cloud");
  c_aps->add_option("--out-torus", o.out_torus, "CSV path for the torus cloud");
  c_aps->callback([&] {
    dp::DirichletPoly d = dp::series_from_arg(o.series);
    dp::SpectrumReport rep = dp::approximate_spectrum_cloud(d, bgrid);
    if (!o.out.empty()) dp::write_cloud_csv(o.out, rep.cloud);
    if (!o.out_torus.empty()) dp::write_cloud_csv(o.out_torus, rep.torus_cloud);
    dp::json j = dp::spectrum_summary(rep);
    j["closed"] = nullptr;
    j["m"] = nullptr;
    emit(j, o);
    if (o.pretty)
      std::cerr << rep.cloud.size() << " line points vs " << rep.torus_cloud.size()
                << " torus points, hausdorff " << rep.cross_hausdorff << "\n";
  });

  // --- closed-range -----------------------------------------------------------
  auto* c_rng = app.add_subcommand("closed-range", "closed-range certificate for D - lambda");
  add_common(c_rng, o, true);
  std::string lambda_s = "0";
  c_rng->add_option("--lambda", lambda_s, "complex shift, as re or re,im");
  c_rng->add_option("--p", o.p, "source exponent (with --q: cross-norm refusal)");
  c_rng->add_option("--q", o.q, "target exponent");
  c_rng->callback([&] {
    auto cfg = engine_config(c_rng, o);
    dp::DirichletPoly d = dp::series_from_arg(o.series);
    if (c_rng->count("--q")) {
      // q < p: no nonzero multiplier has closed range; emit the vanishing
      // quotient sequence instead of a certificate
      dp::RefusalDiagnostic r = dp::cross_norm_range_refusal(
          d, dp::PExponent::parse(o.p), dp::PExponent::parse(o.q), 6, cfg);
      dp::json j = r;
      j["kind"] = "refusal";
      j["closed"] = false;
      j["m"] = nullptr;
      j["hull_bound"] = nullptr;
      emit(j, o);
      if (o.pretty)
        std::cerr << "quotients sink: first " << r.ratios.front() << ", last "
                  << r.ratios.back() << "\n";
      return;
    }
    dp::RangeCertificate cert =
        dp::closed_range_certificate(d, parse_complex(lambda_s), cfg);
    dp::json j = cert;
    j["hull_bound"] = nullptr;
    emit(j, o);
    if (o.pretty)
      std::cerr << (cert.closed ? "closed" : "not closed") << ", m = " << cert.bound_m
                << ", line min = " << cert.line_min << "\n";
  });

  // --- fejer --------------------------------------------------------------
  auto* c_fej = app.add_subcommand("fejer", "order-n smoothing of a series");
  add_common(c_fej, o, true);
  int fejer_n = 1;
  c_fej->add_option("--n", fejer_n, "smoothing order")->required();
  c_fej->callback([&] {
    dp::DirichletPoly d = dp::series_from_arg(o.series);
    dp::TorusPoly f = dp::bohr_lift(d);
    dp::FejerSpec spec{fejer_n, std::max(1, static_cast<int>(f.nvars()))};
    dp::TorusPoly g = dp::fejer_apply(f, spec);
    dp::DirichletPoly smoothed = dp::bohr_transform(g);
    emit(dp::json(smoothed), o);
    if (o.pretty)
      std::cerr << "l2 " << dp::norm_h2(f) << " -> " << dp::norm_h2(g) << " ("
                << g.size() << " of " << f.size() << " terms kept)\n";
  });

  // --- extremal ------------------------------------------------------------
  auto* c_ext = app.add_subcommand("extremal", "unit-norm point-evaluation extremizer");
  add_common(c_ext, o, false);
  std::vector<std::string> zlist;
  int degree = 64;
  c_ext->add_option("--z", zlist, "target point, one re or re,im per variable")->required();
  c_ext->add_option("--p", o.p, "exponent (finite)");
  c_ext->add_option("--degree", degree, "truncation degree per variable");
  c_ext->callback([&] {
    auto cfg = engine_config(c_ext, o);
    dp::ExtremalSpec spec;
    for (const auto& zs : zlist) spec.z.push_back(parse_complex(zs));
    spec.p = dp::PExponent::parse(o.p);
    dp::TorusPoly f = dp::extremal_function(spec, degree);
    dp::NormResult nr = dp::norm_auto(f, spec.p, cfg);
    double attained = std::abs(dp::eval_lift(f, spec.z));
    dp::json j{{"polynomial", f},
               {"norm", nr.value},
               {"norm_stderr", nr.std_error},
               {"attained", attained},
               {"growth_factor", dp::cg_growth_factor(spec.z, spec.p)},
               {"truncation_bound", dp::extremal_truncation_bound(spec, degree)}};
    emit(j, o);
    if (o.pretty)
      std::cerr << "norm " << nr.value << ", attains " << attained << " at z\n";
  });

  // --- verify --------------------------------------------------------------
  auto* c_ver = app.add_subcommand("verify", "run the full invariant battery");
  add_common(c_ver, o, false);
  bool quick = false;
  c_ver->add_flag("--quick", quick, "reduced sample counts");
  c_ver->callback([&] {
    auto cfg = engine_config(c_ver, o);
    dp::VerifyReport rep = dp::run_verify(cfg, quick, &std::cerr);
    emit(dp::json(rep), o);
    if (!rep.all_pass()) rc = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    dp::json err{{"error", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
