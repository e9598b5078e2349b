#pragma once

// Multiplication operators made concrete: truncated multiplicative Toeplitz
// matrices on smooth-number bases, a commutation test characterizing them,
// power-iteration operator norms, spectrum point clouds with an independent
// boundary cross-check, closed-range certificates, and the quotient sequence
// refusing closed range across distinct exponents.

#include "dirichlet/multipliers.hpp"

namespace dirichlet {

// Basis: integers whose prime factors sit among the first `prime_budget`
// primes, up to `cutoff`, sorted ascending. Entry (i, j) of the matrix of
// multiplication by D is the coefficient of D at n_i / n_j when the ratio is
// integral, else 0.
struct OperatorMatrix {
  std::vector<std::uint64_t> basis;
  std::size_t prime_budget = 0;
  std::uint64_t cutoff = 0;
  std::vector<cplx> a;   // row-major, basis.size() squared

  std::size_t dim() const { return basis.size(); }
  cplx& at(std::size_t i, std::size_t j) { return a[i * basis.size() + j]; }
  cplx at(std::size_t i, std::size_t j) const { return a[i * basis.size() + j]; }
};

inline std::vector<std::uint64_t> smooth_basis(std::size_t prime_budget, std::uint64_t cutoff) {
  if (cutoff == 0) throw std::invalid_argument("basis cutoff must be positive");
  std::vector<std::uint64_t> out{1};
  for (std::size_t j = 1; j <= prime_budget; ++j) {
    const std::uint64_t p = prime(j);
    std::size_t have = out.size();
    for (std::size_t i = 0; i < have; ++i) {
      std::uint64_t n = out[i];
      while (n <= cutoff / p) {
        n *= p;
        out.push_back(n);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline OperatorMatrix matrix_of(const DirichletPoly& d, std::size_t prime_budget,
                                std::uint64_t cutoff) {
  OperatorMatrix m;
  m.basis = smooth_basis(prime_budget, cutoff);
  m.prime_budget = prime_budget;
  m.cutoff = cutoff;
  const std::size_t dim = m.basis.size();
  m.a.assign(dim * dim, cplx{0.0, 0.0});
  std::map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < dim; ++i) index[m.basis[i]] = i;
  for (std::size_t j = 0; j < dim; ++j) {
    for (const auto& [k, c] : d.terms()) {
      if (k > cutoff / m.basis[j]) continue;
      auto it = index.find(k * m.basis[j]);
      if (it != index.end()) m.at(it->second, j) += c;
    }
  }
  return m;
}

struct CommutantReport {
  bool commutes = false;
  double max_violation = 0.0;
  std::size_t witness_prime = 0;         // 1-based prime slot of the worst violation
  std::size_t witness_row = 0, witness_col = 0;
};

// Tests whether a square matrix on the (prime_budget, cutoff) basis commutes
// with multiplication by each generator p_l^{-s}. Truncation is exact only on
// columns j with p_l * n_j <= cutoff, so the commutator is compared there and
// nowhere else; matrices of actual multiplication operators vanish on that
// region identically.
inline CommutantReport commutant_test(const std::vector<cplx>& a, std::size_t dim,
                                      std::size_t prime_budget, std::uint64_t cutoff,
                                      double tol) {
  auto basis = smooth_basis(prime_budget, cutoff);
  if (basis.size() != dim || a.size() != dim * dim)
    throw std::invalid_argument("matrix shape does not match the basis of this budget/cutoff");
  std::map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < dim; ++i) index[basis[i]] = i;

  CommutantReport rep;
  for (std::size_t l = 1; l <= prime_budget; ++l) {
    const std::uint64_t pl = prime(l);
    for (std::size_t j = 0; j < dim; ++j) {
      if (basis[j] > cutoff / pl) continue;   // truncated column: skip
      const std::size_t jshift = index.at(basis[j] * pl);
      for (std::size_t i = 0; i < dim; ++i) {
        // (A S_l)[i][j] = A[i][jshift]; (S_l A)[i][j] = A[i/p_l][j] when p_l | n_i.
        cplx lhs = a[i * dim + jshift];
        cplx rhs{0.0, 0.0};
        if (basis[i] % pl == 0) rhs = a[index.at(basis[i] / pl) * dim + j];
        double v = std::abs(lhs - rhs);
        if (v > rep.max_violation) {
          rep.max_violation = v;
          rep.witness_prime = l;
          rep.witness_row = i;
          rep.witness_col = j;
        }
      }
    }
  }
  rep.commutes = rep.max_violation <= tol;
  return rep;
}

inline CommutantReport commutant_test(const OperatorMatrix& m, double tol) {
  return commutant_test(m.a, m.dim(), m.prime_budget, m.cutoff, tol);
}

namespace detail {

// Largest singular value by power iteration on A*A. The Rayleigh estimate is
// monotone nondecreasing, so the returned value approximates from below.
inline double largest_singular_value(const std::vector<cplx>& a, std::size_t dim,
                                     double rel_tol = 1e-12, int max_iter = 20000) {
  if (dim == 0) return 0.0;
  std::vector<cplx> v(dim), av(dim), u(dim);
  for (std::size_t i = 0; i < dim; ++i)
    v[i] = cplx{1.0 + 1.0 / static_cast<double>(i + 1), 0.0};
  double nrm = 0.0;
  for (auto& x : v) nrm += std::norm(x);
  nrm = std::sqrt(nrm);
  for (auto& x : v) x /= nrm;

  double sigma = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    // av = A v
    for (std::size_t i = 0; i < dim; ++i) {
      cplx s{0.0, 0.0};
      const cplx* row = &a[i * dim];
      for (std::size_t j = 0; j < dim; ++j) s += row[j] * v[j];
      av[i] = s;
    }
    // u = A^H av
    for (std::size_t j = 0; j < dim; ++j) u[j] = cplx{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) {
      const cplx* row = &a[i * dim];
      for (std::size_t j = 0; j < dim; ++j) u[j] += std::conj(row[j]) * av[i];
    }
    double norm_av = 0.0;
    for (const auto& x : av) norm_av += std::norm(x);
    double next = std::sqrt(norm_av);   // = ||A v||, a valid lower bound at unit v
    double norm_u = 0.0;
    for (const auto& x : u) norm_u += std::norm(x);
    norm_u = std::sqrt(norm_u);
    if (norm_u == 0.0) return 0.0;
    for (std::size_t j = 0; j < dim; ++j) v[j] = u[j] / norm_u;
    if (it > 0 && std::abs(next - sigma) <= rel_tol * std::max(1.0, next)) {
      sigma = std::max(sigma, next);
      break;
    }
    sigma = std::max(sigma, next);
  }
  return sigma;
}

}  // namespace detail

inline double truncated_norm(const OperatorMatrix& m) {
  return detail::largest_singular_value(m.a, m.dim());
}

// --- point clouds and Hausdorff geometry -------------------------------------

namespace detail {

// Uniform-cell nearest neighbor index over a planar point cloud.
class PlanarIndex {
 public:
  explicit PlanarIndex(const std::vector<cplx>& pts) : pts_(pts) {
    if (pts.empty()) throw std::invalid_argument("empty point cloud");
    double xmin = pts[0].real(), xmax = xmin, ymin = pts[0].imag(), ymax = ymin;
    for (const auto& p : pts) {
      xmin = std::min(xmin, p.real());
      xmax = std::max(xmax, p.real());
      ymin = std::min(ymin, p.imag());
      ymax = std::max(ymax, p.imag());
    }
    double w = std::max(xmax - xmin, 1e-12), h = std::max(ymax - ymin, 1e-12);
    double target = std::sqrt(w * h / static_cast<double>(pts.size()));
    cell_ = std::max(target, 1e-12);
    x0_ = xmin;
    y0_ = ymin;
    nx_ = static_cast<int>(w / cell_) + 1;
    ny_ = static_cast<int>(h / cell_) + 1;
    std::vector<int> counts(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
    cell_of_.resize(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      int c = cell_index(pts[k]);
      cell_of_[k] = c;
      ++counts[c + 1];
    }
    offsets_.assign(counts.begin(), counts.end());
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    order_.resize(pts.size());
    std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t k = 0; k < pts.size(); ++k) order_[cursor[cell_of_[k]]++] = k;
  }

  double nearest_dist(cplx qp) const {
    int cx = clampi(static_cast<int>((qp.real() - x0_) / cell_), 0, nx_ - 1);
    int cy = clampi(static_cast<int>((qp.imag() - y0_) / cell_), 0, ny_ - 1);
    double best = std::numeric_limits<double>::infinity();
    for (int ring = 0;; ++ring) {
      bool any = false;
      for (int dy = -ring; dy <= ring; ++dy) {
        for (int dx = -ring; dx <= ring; ++dx) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          int gx = cx + dx, gy = cy + dy;
          if (gx < 0 || gy < 0 || gx >= nx_ || gy >= ny_) continue;
          any = true;
          int c = gy * nx_ + gx;
          for (int k = offsets_[c]; k < offsets_[c + 1]; ++k)
            best = std::min(best, std::abs(pts_[order_[k]] - qp));
        }
      }
      // Once a ring lies entirely farther than the best hit, stop. Ring r
      // cells start at distance (r-1) * cell from the query's cell.
      if (best < std::numeric_limits<double>::infinity() &&
          static_cast<double>(ring) * cell_ > best + cell_)
        break;
      if (!any && ring > nx_ + ny_) break;
    }
    return best;
  }

 private:
  static int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }
  int cell_index(cplx p) const {
    int gx = clampi(static_cast<int>((p.real() - x0_) / cell_), 0, nx_ - 1);
    int gy = clampi(static_cast<int>((p.imag() - y0_) / cell_), 0, ny_ - 1);
    return gy * nx_ + gx;
  }

  const std::vector<cplx>& pts_;
  double cell_, x0_, y0_;
  int nx_, ny_;
  std::vector<int> cell_of_, offsets_;
  std::vector<std::size_t> order_;
};

}  // namespace detail

inline double directed_hausdorff(const std::vector<cplx>& from, const std::vector<cplx>& to) {
  detail::PlanarIndex idx(to);
  double worst = 0.0;
  for (const auto& p : from) worst = std::max(worst, idx.nearest_dist(p));
  return worst;
}

inline double hausdorff_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

// --- spectrum clouds ----------------------------------------------------------

struct HalfPlaneGrid {
  double sigma_max = 10.0;
  int sigma_count = 400;
  double t_max = 50.0;
  int t_count = 400;
  double sigma_min_ratio = 1e-4;   // smallest sigma as a fraction of sigma_max
};

struct SpectrumReport {
  std::string kind;                 // "halfplane" or "boundary"
  std::vector<cplx> cloud;          // images D(s)
  double hull_bound = 0.0;          // largest gap between neighbor images
  std::vector<cplx> torus_cloud;    // boundary kind only: lift values F(omega)
  double cross_hausdorff = 0.0;     // boundary kind only: distance between the clouds
  std::string note;
};

// Image of the open right half plane under D, sampled on a log x linear grid.
// The point spectrum of a nonconstant D is empty and the residual part fills
// the closed image; both facts ride along as a note rather than data.
inline SpectrumReport spectrum_cloud(const DirichletPoly& d, const HalfPlaneGrid& g = {}) {
  if (d.is_zero()) throw std::invalid_argument("spectrum cloud of the zero series is just {0}");
  if (g.sigma_count < 2 || g.t_count < 2)
    throw std::invalid_argument("spectrum grid needs at least 2 nodes per axis");
  const cplx a1 = d.at(1);
  SpectrumReport rep;
  rep.kind = "halfplane";
  rep.cloud.reserve(static_cast<std::size_t>(g.sigma_count) * g.t_count);
  const double r = g.sigma_min_ratio;
  std::vector<double> sig(g.sigma_count), ts(g.t_count);
  for (int i = 0; i < g.sigma_count; ++i) {
    double x = static_cast<double>(i) / static_cast<double>(g.sigma_count - 1);
    sig[i] = g.sigma_max * std::pow(r, 1.0 - x);
  }
  for (int k = 0; k < g.t_count; ++k)
    ts[k] = -g.t_max + 2.0 * g.t_max * static_cast<double>(k) / static_cast<double>(g.t_count - 1);
  // D(sigma + it) = a_1 + sum_{n>1} a_n n^{-sigma} e^{-it log n}
  std::vector<double> lnn;
  std::vector<cplx> coef;
  for (const auto& [n, c] : d.terms())
    if (n > 1) {
      lnn.push_back(std::log(static_cast<double>(n)));
      coef.push_back(c);
    }
  double worst_gap = 0.0;
  std::vector<cplx> prev_row;
  for (int i = 0; i < g.sigma_count; ++i) {
    std::vector<cplx> row(g.t_count);
    for (int k = 0; k < g.t_count; ++k) {
      cplx s{0.0, 0.0};
      for (std::size_t m = 0; m < lnn.size(); ++m)
        s += coef[m] * std::exp(-sig[i] * lnn[m]) * std::polar(1.0, -ts[k] * lnn[m]);
      row[k] = a1 + s;
      if (k > 0) worst_gap = std::max(worst_gap, std::abs(row[k] - row[k - 1]));
      if (i > 0) worst_gap = std::max(worst_gap, std::abs(row[k] - prev_row[k]));
      rep.cloud.push_back(row[k]);
    }
    prev_row = std::move(row);
  }
  rep.hull_bound = worst_gap;
  rep.note = "point spectrum empty for nonconstant D; residual part covers the interior image";
  return rep;
}

struct BoundaryGrid {
  double t_max = 1e4;
  std::int64_t t_count = 1'000'000;
  int torus_grid = 512;                        // per-variable phase resolution
  std::int64_t max_torus_evals = std::int64_t{1} << 20;
};

// Approximate point spectrum: the boundary image closure. Two independent
// clouds, one along the critical line through D(it), one through the lift on
// a torus phase grid; their Hausdorff distance is the agreement certificate.
inline SpectrumReport approximate_spectrum_cloud(const DirichletPoly& d,
                                                 const BoundaryGrid& g = {}) {
  if (d.is_zero()) throw std::invalid_argument("spectrum cloud of the zero series is just {0}");
  if (g.t_count < 2) throw std::invalid_argument("boundary grid needs at least 2 samples");
  SpectrumReport rep;
  rep.kind = "boundary";
  detail::LineEvaluator ev(d);
  rep.cloud.resize(g.t_count);
  double worst_gap = 0.0;
  for (std::int64_t k = 0; k < g.t_count; ++k) {
    double t = -g.t_max + 2.0 * g.t_max * static_cast<double>(k) / static_cast<double>(g.t_count - 1);
    rep.cloud[k] = ev.at(t);
    if (k > 0) worst_gap = std::max(worst_gap, std::abs(rep.cloud[k] - rep.cloud[k - 1]));
  }
  rep.hull_bound = worst_gap;

  const TorusPoly f = bohr_lift(d);
  const std::size_t nv = std::max<std::size_t>(1, f.nvars());
  std::int64_t res = g.torus_grid;
  auto total = [&](std::int64_t rr) {
    double t = 1.0;
    for (std::size_t j = 0; j < nv; ++j) t *= static_cast<double>(rr);
    return t;
  };
  while (res > 4 && total(res) > static_cast<double>(g.max_torus_evals)) --res;
  const auto cp = detail::CompiledPoly::compile(f);
  std::vector<std::vector<cplx>> lad;
  cp.prepare_scratch(lad);
  std::vector<std::int64_t> idx(nv, 0);
  std::vector<double> u(nv, 0.0);
  const double step = 1.0 / static_cast<double>(res);
  rep.torus_cloud.reserve(static_cast<std::size_t>(total(res)));
  for (;;) {
    for (std::size_t j = 0; j < nv; ++j) u[j] = static_cast<double>(idx[j]) * step;
    rep.torus_cloud.push_back(cp.eval_phases(u.data(), lad));
    std::size_t j = 0;
    while (j < nv && ++idx[j] == res) idx[j++] = 0;
    if (j == nv) break;
  }
  rep.cross_hausdorff = hausdorff_distance(rep.cloud, rep.torus_cloud);
  rep.note = "line cloud D(it) vs torus cloud F(omega); closures coincide";
  return rep;
}

// --- closed range --------------------------------------------------------------

struct LineScan {
  double t_max = 200.0;
  std::int64_t steps = 400'000;
};

struct RangeCertificate {
  bool closed = false;
  double bound_m = 0.0;              // torus minimum of |F - lambda|, from above
  double threshold = 1e-6;
  std::vector<double> witness_phases;
  std::vector<cplx> witness_omega;
  double line_min = 0.0;             // independent minimum of |D(it) - lambda|
  double witness_t = 0.0;
  double agreement = 0.0;            // |bound_m - line_min|
  double phase_tol = 0.0;
};

// Closed-range certificate for multiplication by D - lambda: the range is
// closed exactly when the boundary modulus stays above a positive floor. The
// reported bound_m equals the infimum of ||(D - lambda) E|| over unit E, and
// the vertical-line scan rechecks it through a second parametrization.
inline RangeCertificate closed_range_certificate(const DirichletPoly& d, cplx lambda,
                                                 const EngineConfig& cfg = {},
                                                 const LineScan& scan = {}) {
  DirichletPoly e = d;
  e.add(1, -lambda);
  if (e.is_zero())
    throw std::invalid_argument("D - lambda vanishes identically; the operator is zero");
  RangeCertificate cert;
  cert.threshold = cfg.closed_range_threshold;

  ExtremumResult mn = extremum_on_torus(bohr_lift(e), Extremum::minimize, cfg);
  cert.bound_m = mn.value;
  cert.witness_phases = mn.phases;
  cert.witness_omega = mn.omega;
  cert.phase_tol = mn.phase_tol;
  cert.closed = mn.value > cfg.closed_range_threshold;

  detail::LineEvaluator ev(e);
  const double h = 2.0 * scan.t_max / static_cast<double>(scan.steps);
  double best = std::numeric_limits<double>::infinity(), best_t = 0.0;
  for (std::int64_t i = 0; i <= scan.steps; ++i) {
    double t = -scan.t_max + h * static_cast<double>(i);
    double v = std::abs(ev.at(t));
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  auto slice = [&](double t) { return std::abs(ev.at(t)); };
  auto [bt, bv] = detail::golden_refine(slice, best_t, h, cfg.refine_tol, false);
  if (bv < best) {
    best = bv;
    best_t = bt;
  }
  cert.line_min = best;
  cert.witness_t = best_t;
  cert.agreement = std::abs(cert.bound_m - cert.line_min);
  return cert;
}

// --- the refusal sequence -------------------------------------------------------

struct RefusalDiagnostic {
  double beta = 0.0;
  std::vector<std::int64_t> degrees;
  std::vector<double> ratios;    // ||D Q_k||_q / ||Q_k||_p, expected to sink to 0
};

// When q < p, multiplication by a nonzero D never has closed range from H_p
// to H_q: the quotients along partial sums (degree 4^k) of the binomial
// series (1 - w)^{-beta} in the first torus variable sink to zero. beta sits
// strictly between 1/p and 1/q, so the series converges in H_q and diverges
// in H_p.
inline RefusalDiagnostic cross_norm_range_refusal(const DirichletPoly& d, PExponent p,
                                                  PExponent q, int kmax = 6,
                                                  const EngineConfig& cfg = {}) {
  if (d.is_zero()) throw std::invalid_argument("refusal sequence needs a nonzero multiplier");
  if (!(q < p))
    throw std::domain_error("refusal sequence applies to q < p only");
  RefusalDiagnostic out;
  const double ip = p.infinite ? 0.0 : 1.0 / p.value();
  const double iq = 1.0 / q.value();
  out.beta = 0.8 * iq + 0.2 * ip;

  const TorusPoly fd = bohr_lift(d);
  for (int k = 1; k <= kmax; ++k) {
    const std::int64_t deg = static_cast<std::int64_t>(std::pow(4.0, k));
    TorusPoly qk;
    qk.set_nvars(1);
    double c = 1.0;
    for (std::int64_t j = 0; j <= deg; ++j) {
      qk.set(MultiIndex::from_exponents({static_cast<std::uint32_t>(j)}), cplx{c, 0.0});
      c *= (static_cast<double>(j) + out.beta) / (static_cast<double>(j) + 1.0);
    }
    NormResult den = norm_auto(qk, p, cfg);
    NormResult num = norm_auto(poly_product(fd, qk), q, cfg);
    out.degrees.push_back(deg);
    out.ratios.push_back(num.value / den.value);
  }
  return out;
}

}  // namespace dirichlet
