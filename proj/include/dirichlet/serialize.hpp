#pragma once

// JSON and CSV forms of the value types. Terms are emitted in their canonical
// orders (ascending index, lexicographic exponents); numbers rely on the
// serializer's exact round-trip formatting, CSV uses 17 significant digits.

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dirichlet/multipliers.hpp"
#include "dirichlet/operators.hpp"
#include "dirichlet/parse.hpp"

namespace nlohmann {

template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z) {
    j = json{{"re", z.real()}, {"im", z.imag()}};
  }
  static void from_json(const json& j, std::complex<double>& z) {
    z = {j.at("re").get<double>(), j.value("im", 0.0)};
  }
};

}  // namespace nlohmann

namespace dirichlet {

using json = nlohmann::json;

inline void to_json(json& j, const DirichletPoly& d) {
  json terms = json::array();
  for (const auto& [n, c] : d.terms())
    terms.push_back({{"n", n}, {"re", c.real()}, {"im", c.imag()}});
  j = json{{"terms", std::move(terms)}};
}

inline void from_json(const json& j, DirichletPoly& d) {
  d = DirichletPoly{};
  for (const auto& t : j.at("terms")) {
    std::uint64_t n = t.at("n").get<std::uint64_t>();
    if (n == 0) throw std::invalid_argument("series JSON: index 0");
    cplx c{t.at("re").get<double>(), t.value("im", 0.0)};
    if (d.at(n) != cplx{0.0, 0.0}) throw std::invalid_argument("series JSON: duplicate index");
    d.set(n, c);
  }
}

inline void to_json(json& j, const TorusPoly& f) {
  json terms = json::array();
  for (const auto& [a, c] : f.terms())
    terms.push_back({{"alpha", a.exponents(f.nvars())}, {"re", c.real()}, {"im", c.imag()}});
  j = json{{"nvars", f.nvars()}, {"terms", std::move(terms)}};
}

inline void from_json(const json& j, TorusPoly& f) {
  f = TorusPoly{};
  f.set_nvars(j.at("nvars").get<std::size_t>());
  for (const auto& t : j.at("terms")) {
    auto alpha = t.at("alpha").get<std::vector<std::uint32_t>>();
    if (alpha.size() > f.nvars())
      throw std::invalid_argument("polynomial JSON: alpha longer than nvars");
    cplx c{t.at("re").get<double>(), t.value("im", 0.0)};
    MultiIndex mi = MultiIndex::from_exponents(alpha);
    if (f.at(mi) != cplx{0.0, 0.0})
      throw std::invalid_argument("polynomial JSON: duplicate exponent");
    f.set(mi, c);
  }
}

inline void to_json(json& j, const Estimate& e) {
  j = json{{"value", e.value}, {"stderr", e.std_error}, {"count", e.count}};
}

inline void to_json(json& j, const NormResult& r) {
  j = json{{"value", r.value}, {"stderr", r.std_error}, {"method", r.method}};
}

inline void to_json(json& j, const EngineConfig& c) {
  j = json{{"seed", c.seed},
           {"samples", c.samples},
           {"grid", c.grid},
           {"refine_tol", c.refine_tol},
           {"max_grid_evals", c.max_grid_evals},
           {"closed_range_threshold", c.closed_range_threshold}};
}

inline void from_json(const json& j, EngineConfig& c) {
  c.seed = j.value("seed", c.seed);
  c.samples = j.value("samples", c.samples);
  c.grid = j.value("grid", c.grid);
  c.refine_tol = j.value("refine_tol", c.refine_tol);
  c.max_grid_evals = j.value("max_grid_evals", c.max_grid_evals);
  c.closed_range_threshold = j.value("closed_range_threshold", c.closed_range_threshold);
}

inline EngineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  json j = json::parse(in);
  EngineConfig c;
  from_json(j, c);
  return c;
}

inline const char* regime_name(EssRegime r) {
  switch (r) {
    case EssRegime::drop_finite: return "drop-finite";
    case EssRegime::from_sup: return "from-sup";
    case EssRegime::fixed_exponent: return "fixed-exponent";
    default: return "fixed-exponent-l1";
  }
}

inline void to_json(json& j, const EssBracket& b) {
  j = json{{"lower", b.lower},
           {"upper", b.upper},
           {"lower_stderr", b.lower_err},
           {"upper_stderr", b.upper_err},
           {"regime", regime_name(b.regime)},
           {"compact", b.compact}};
}

inline void to_json(json& j, const MultiplierClass& mc) {
  j = json{{"space", mc.name()}};
  if (mc.kind == MultiplierKind::space_ht) j["t"] = mc.t.str();
}

inline void to_json(json& j, const SearchBound& s) {
  j = json{{"value", s.value}, {"witness", s.witness}, {"evaluations", s.evaluations}};
}

inline void to_json(json& j, const CommutantReport& r) {
  j = json{{"commutes", r.commutes},
           {"max_violation", r.max_violation},
           {"witness_prime", r.witness_prime},
           {"witness_row", r.witness_row},
           {"witness_col", r.witness_col}};
}

inline void to_json(json& j, const RangeCertificate& c) {
  j = json{{"kind", "closed-range"},
           {"closed", c.closed},
           {"m", c.bound_m},
           {"threshold", c.threshold},
           {"line_min", c.line_min},
           {"witness_t", c.witness_t},
           {"witness_phases", c.witness_phases},
           {"agreement", c.agreement},
           {"phase_tol", c.phase_tol}};
}

inline void to_json(json& j, const RefusalDiagnostic& r) {
  j = json{{"beta", r.beta}, {"degrees", r.degrees}, {"ratios", r.ratios}};
}

inline json spectrum_summary(const SpectrumReport& rep) {
  json j{{"kind", rep.kind},
         {"hull_bound", rep.hull_bound},
         {"count", rep.cloud.size()},
         {"note", rep.note}};
  if (!rep.torus_cloud.empty()) {
    j["torus_count"] = rep.torus_cloud.size();
    j["cross_hausdorff"] = rep.cross_hausdorff;
  }
  return j;
}

inline void write_cloud_csv(std::ostream& os, const std::vector<cplx>& cloud) {
  os << "re,im\n";
  char buf[80];
  for (const cplx& z : cloud) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
    os << buf;
  }
}

inline void write_cloud_csv(const std::string& path, const std::vector<cplx>& cloud) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_cloud_csv(out, cloud);
}

// Accepts an inline JSON object, a path to a JSON file, or the expression
// grammar, in that order of preference.
inline DirichletPoly series_from_arg(const std::string& arg) {
  std::string s = arg;
  std::size_t i = s.find_first_not_of(" \t\n");
  if (i != std::string::npos && s[i] == '{') {
    json j = json::parse(s);
    return j.get<DirichletPoly>();
  }
  if (s.size() > 5 && s.substr(s.size() - 5) == ".json") {
    std::ifstream in(s);
    if (!in) throw std::runtime_error("cannot open series file " + s);
    json j = json::parse(in);
    return j.get<DirichletPoly>();
  }
  return parse_series(s);
}

}  // namespace dirichlet
