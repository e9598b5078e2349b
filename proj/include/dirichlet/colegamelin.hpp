#pragma once

// Interior point bounds and their extremizers on the polydisc: the pointwise
// growth bound |F(z)| <= prod_j (1 - |z_j|^2)^{-1/p} ||F||_p and the unit-norm
// functions that attain it, truncated to polynomials.

#include "dirichlet/norms.hpp"

namespace dirichlet {

struct ExtremalSpec {
  std::vector<cplx> z;
  PExponent p = PExponent::integer(2);
};

struct CgCheck {
  double lhs = 0.0;       // |F(z)|
  double rhs = 0.0;       // growth factor times the norm
  double norm = 0.0;
  double norm_err = 0.0;
  std::string method;
};

// Growth factor prod_j (1 - |z_j|^2)^{-1/p}; 1 for p = infinity... the bound
// with exponent 0 degenerates, so finite p is required here.
inline double cg_growth_factor(const std::vector<cplx>& z, PExponent p) {
  if (p.infinite) throw std::invalid_argument("growth factor needs finite p");
  double prod = 1.0;
  for (const cplx& zj : z) {
    double r2 = std::norm(zj);
    if (r2 >= 1.0) throw std::invalid_argument("evaluation point must lie in the open polydisc");
    prod *= 1.0 - r2;
  }
  return std::pow(prod, -1.0 / p.value());
}

// Checks |F(z)| against the growth bound. The norm route is picked by
// norm_auto; the caller can loosen the comparison by the returned error bar.
inline CgCheck cg_bound(const TorusPoly& f, PExponent p, const std::vector<cplx>& z,
                        const EngineConfig& cfg = {}) {
  if (z.size() != f.nvars())
    throw std::invalid_argument("evaluation point dimension mismatch");
  NormResult n = norm_auto(f, p, cfg);
  CgCheck c;
  c.lhs = std::abs(eval_lift(f, z));
  c.norm = n.value;
  c.norm_err = n.std_error;
  c.method = n.method;
  c.rhs = cg_growth_factor(z, p) * n.value;
  return c;
}

inline CgCheck cg_bound(const DirichletPoly& d, PExponent p, const std::vector<cplx>& z,
                        const EngineConfig& cfg = {}) {
  return cg_bound(bohr_lift(d), p, z, cfg);
}

// Truncation tail bound for the degree-d polynomial cut of the extremizer:
// (d + 2) r^{d+1} / (1 - r)^2 with r the largest |z_j|.
inline double extremal_truncation_bound(const ExtremalSpec& spec, int degree) {
  double r = 0.0;
  for (const cplx& zj : spec.z) r = std::max(r, std::abs(zj));
  if (r >= 1.0) throw std::invalid_argument("extremal point must lie in the open polydisc");
  if (r == 0.0) return 0.0;
  return (static_cast<double>(degree) + 2.0) * std::pow(r, degree + 1) /
         ((1.0 - r) * (1.0 - r));
}

namespace detail {

// Coefficients of (1 - w)^{-2/p} = sum g_k w^k by the binomial recurrence
// g_{k+1} = g_k (k + 2/p) / (k + 1). All g_k > 0; the principal branch is
// the only one reachable since Re(1 - conj(z_j) u_j) > 0 on the polydisc.
inline std::vector<double> binomial_ladder(double two_over_p, int degree) {
  std::vector<double> g(static_cast<std::size_t>(degree) + 1);
  g[0] = 1.0;
  for (int k = 0; k < degree; ++k)
    g[k + 1] = g[k] * (static_cast<double>(k) + two_over_p) / (static_cast<double>(k) + 1.0);
  return g;
}

inline TorusPoly extremal_build(const ExtremalSpec& spec, int degree) {
  if (spec.p.infinite) throw std::invalid_argument("extremizer needs finite p");
  if (degree < 0) throw std::invalid_argument("truncation degree must be nonnegative");
  const std::size_t nv = spec.z.size();
  if (nv == 0) return TorusPoly::constant(cplx{1.0, 0.0});
  double cells = 1.0;
  for (std::size_t j = 0; j < nv; ++j) cells *= static_cast<double>(degree) + 1.0;
  if (cells > static_cast<double>(std::int64_t{1} << 22))
    throw std::invalid_argument("extremizer truncation too large (over 2^22 terms)");
  const double inv_p = 1.0 / spec.p.value();
  const auto g = binomial_ladder(2.0 * inv_p, degree);

  // Per-variable coefficient ladders c_j[k] = (1-|z_j|^2)^{1/p} g_k conj(z_j)^k.
  std::vector<std::vector<cplx>> lad(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    const cplx zb = std::conj(spec.z[j]);
    const double scale = std::pow(1.0 - std::norm(spec.z[j]), inv_p);
    lad[j].resize(static_cast<std::size_t>(degree) + 1);
    cplx pw{1.0, 0.0};
    for (int k = 0; k <= degree; ++k) {
      lad[j][k] = scale * g[k] * pw;
      pw *= zb;
    }
  }

  TorusPoly out;
  out.set_nvars(nv);
  std::vector<std::uint32_t> alpha(nv, 0);
  for (;;) {
    cplx c{1.0, 0.0};
    for (std::size_t j = 0; j < nv; ++j) c *= lad[j][alpha[j]];
    out.set(MultiIndex::from_exponents(alpha), c);
    std::size_t j = 0;
    while (j < nv && static_cast<int>(++alpha[j]) > degree) alpha[j++] = 0;
    if (j == nv) break;
  }
  return out;
}

}  // namespace detail

// Degree-d truncation of the unit-norm extremizer
//   f_z(u) = prod_j [ (1-|z_j|^2) / (1 - conj(z_j) u_j)^2 ]^{1/p}.
// Guarded at |z_j| <= 0.99 where the truncation certificate stays meaningful.
inline TorusPoly extremal_function(const ExtremalSpec& spec, int degree = 64) {
  for (const cplx& zj : spec.z)
    if (std::abs(zj) > 0.99)
      throw std::invalid_argument("extremal point radius above the 0.99 accuracy guard");
  return detail::extremal_build(spec, degree);
}

// Same construction for radii up to 1 (exclusive). The truncation bound may
// be vacuous here; callers that only consume low-order coefficients (Fejer
// sections, boundary concentration candidates) lose nothing.
inline TorusPoly extremal_function_near_boundary(const ExtremalSpec& spec, int degree = 64) {
  for (const cplx& zj : spec.z)
    if (std::abs(zj) >= 1.0)
      throw std::invalid_argument("extremal point must lie in the open polydisc");
  return detail::extremal_build(spec, degree);
}

}  // namespace dirichlet
