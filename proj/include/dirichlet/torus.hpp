#pragma once

// Numerics on the torus: deterministic sample plans (plain Monte Carlo and a
// rank-1 lattice), mean-value integration with an error estimate, and a
// certified grid + golden-section search for extrema of |F|.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "dirichlet/bohr.hpp"

namespace dirichlet {

enum class SampleScheme { random_uniform, rank1_lattice };

struct SamplePlan {
  std::size_t nvars = 1;
  std::int64_t count = std::int64_t{1} << 16;
  std::uint64_t seed = 0x5EED;
  SampleScheme scheme = SampleScheme::random_uniform;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;   // 0 for deterministic rules and constant integrands
  std::int64_t count = 0;
};

// Shared knobs for the numeric routines. `grid` = 0 picks the per-dimension
// default resolution; `samples` feeds the sample plans.
struct EngineConfig {
  std::uint64_t seed = 0x5EED;
  std::int64_t samples = std::int64_t{1} << 16;
  int grid = 0;
  double refine_tol = 1e-6;
  std::int64_t max_grid_evals = std::int64_t{1} << 24;
  double closed_range_threshold = 1e-6;
};

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t next_prime_at_least(std::uint64_t n) {
  while (!is_prime_u64(n)) ++n;
  return n;
}

// splitmix64; used to derive independent per-trial seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform double in [0,1) from raw engine bits. Avoids the distribution
// classes so the stream is identical across standard libraries.
inline double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Emits sample points of a plan in a fixed order: phases in turns, one row
// of nvars per sample. rank-1 lattice counts are rounded up to a prime and
// use the Korobov generator vector (1, a, a^2, ...).
class PointStream {
 public:
  explicit PointStream(const SamplePlan& plan) : plan_(plan), eng_(plan.seed) {
    if (plan.nvars == 0 || plan.count <= 0)
      throw std::invalid_argument("sample plan needs nvars >= 1 and count >= 1");
    if (plan_.scheme == SampleScheme::rank1_lattice) {
      n_ = next_prime_at_least(static_cast<std::uint64_t>(plan_.count));
      double inv_golden = 2.0 / (1.0 + std::sqrt(5.0));
      std::uint64_t a = static_cast<std::uint64_t>(static_cast<double>(n_) * inv_golden);
      if (a < 2) a = 2;
      gen_.resize(plan_.nvars);
      gen_[0] = 1 % n_;
      for (std::size_t j = 1; j < plan_.nvars; ++j) gen_[j] = (gen_[j - 1] * a) % n_;
    }
  }

  std::int64_t count() const {
    return plan_.scheme == SampleScheme::rank1_lattice ? static_cast<std::int64_t>(n_)
                                                       : plan_.count;
  }

  bool deterministic() const { return plan_.scheme == SampleScheme::rank1_lattice; }

  // Fills `u` with the phases (in turns, [0,1)) of sample i. For the random
  // scheme the call order must be i = 0,1,2,... which the integrator follows.
  void phases(std::int64_t i, std::vector<double>& u) {
    u.resize(plan_.nvars);
    if (plan_.scheme == SampleScheme::rank1_lattice) {
      const double inv = 1.0 / static_cast<double>(n_);
      for (std::size_t j = 0; j < plan_.nvars; ++j) {
        std::uint64_t r = (static_cast<std::uint64_t>(i) % n_) * gen_[j] % n_;
        u[j] = static_cast<double>(r) * inv;
      }
    } else {
      for (std::size_t j = 0; j < plan_.nvars; ++j) u[j] = unit_from_bits(eng_());
    }
  }

 private:
  SamplePlan plan_;
  std::mt19937_64 eng_;
  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> gen_;
};

// Flat form of a TorusPoly for hot loops: 0-based variable slots, per-variable
// power ladders filled once per point.
struct CompiledPoly {
  struct Term {
    cplx c;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pows;  // (var, exponent)
  };
  std::size_t nvars = 0;
  std::vector<Term> terms;
  std::vector<std::uint32_t> max_deg;

  static CompiledPoly compile(const TorusPoly& f) {
    CompiledPoly cp;
    cp.nvars = f.nvars();
    cp.max_deg.assign(cp.nvars, 0);
    for (const auto& [a, c] : f.terms()) {
      Term t;
      t.c = c;
      for (const auto& fac : a.factors()) {
        std::uint32_t var = static_cast<std::uint32_t>(*prime_index(fac.p)) - 1;
        t.pows.emplace_back(var, fac.e);
        cp.max_deg[var] = std::max(cp.max_deg[var], fac.e);
      }
      cp.terms.push_back(std::move(t));
    }
    return cp;
  }

  // Caller provides scratch ladders sized via prepare_scratch.
  void prepare_scratch(std::vector<std::vector<cplx>>& lad) const {
    lad.resize(nvars);
    for (std::size_t j = 0; j < nvars; ++j) lad[j].resize(max_deg[j] + 1);
  }

  cplx eval_phases(const double* phases, std::vector<std::vector<cplx>>& lad) const {
    constexpr double tau = 2.0 * std::numbers::pi;
    for (std::size_t j = 0; j < nvars; ++j) {
      cplx w = std::polar(1.0, tau * phases[j]);
      lad[j][0] = cplx{1.0, 0.0};
      for (std::uint32_t k = 1; k <= max_deg[j]; ++k) lad[j][k] = lad[j][k - 1] * w;
    }
    cplx s{0.0, 0.0};
    for (const auto& t : terms) {
      cplx m = t.c;
      for (auto [var, e] : t.pows) m *= lad[var][e];
      s += m;
    }
    return s;
  }
};

}  // namespace detail

// Equal-weight mean of a real integrand over the plan's points. The integrand
// receives the phase row (turns in [0,1)). Estimate.std_error is the sample
// standard deviation of the mean for the random scheme and 0 for the lattice.
template <class Fn>
Estimate integrate_torus(Fn&& integrand, const SamplePlan& plan) {
  detail::PointStream stream(plan);
  const std::int64_t n = stream.count();
  detail::Kahan sum, sumsq;
  std::vector<double> u;
  for (std::int64_t i = 0; i < n; ++i) {
    stream.phases(i, u);
    double x = integrand(u);
    sum.add(x);
    sumsq.add(x * x);
  }
  const double mean = sum.sum / static_cast<double>(n);
  Estimate e;
  e.value = mean;
  e.count = n;
  if (!stream.deterministic() && n > 1) {
    double var = (sumsq.sum - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
    e.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
  }
  return e;
}

// Mean of a complex integrand (componentwise); no error estimate.
template <class Fn>
cplx integrate_torus_complex(Fn&& integrand, const SamplePlan& plan) {
  detail::PointStream stream(plan);
  const std::int64_t n = stream.count();
  detail::KahanC sum;
  std::vector<double> u;
  for (std::int64_t i = 0; i < n; ++i) {
    stream.phases(i, u);
    sum.add(integrand(u));
  }
  return sum.value() / static_cast<double>(n);
}

enum class Extremum { maximize, minimize };

struct ExtremumResult {
  double value = 0.0;
  std::vector<double> phases;  // turns in [0,1)
  std::vector<cplx> omega;
  double phase_tol = 0.0;
};

namespace detail {

// Golden-section refinement of one phase coordinate on a bracket of half
// width h (turns). Returns the best evaluated (phase, value).
template <class Slice>
std::pair<double, double> golden_refine(Slice&& g, double center, double h, double tol,
                                        bool maximize) {
  constexpr double irho = 0.6180339887498949;  // 1/golden
  double a = center - h, b = center + h;
  double x1 = b - irho * (b - a);
  double x2 = a + irho * (b - a);
  double f1 = g(x1), f2 = g(x2);
  double bx = center, bf = g(center);
  auto better = [&](double f, double f0) { return maximize ? f > f0 : f < f0; };
  if (better(f1, bf)) { bx = x1; bf = f1; }
  if (better(f2, bf)) { bx = x2; bf = f2; }
  while (b - a > tol) {
    if (better(f1, f2)) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - irho * (b - a);
      f1 = g(x1);
      if (better(f1, bf)) { bx = x1; bf = f1; }
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + irho * (b - a);
      f2 = g(x2);
      if (better(f2, bf)) { bx = x2; bf = f2; }
    }
  }
  return {bx, bf};
}

}  // namespace detail

// Certified search for the extremum of |F| on the torus: a full phase grid
// (defaults 256 per variable up to 3 variables, 64 beyond, shrunk so the
// total stays within max_grid_evals), then cyclic per-coordinate golden
// sections from the best grid cells down to refine_tol in phase. Every
// reported value was actually evaluated, so a maximum is a lower bound of
// the true sup and a minimum an upper bound of the true inf.
inline ExtremumResult extremum_on_torus(const TorusPoly& f, Extremum mode,
                                        const EngineConfig& cfg = {}) {
  const bool maximize = mode == Extremum::maximize;
  const std::size_t nv = f.nvars();
  if (nv > 8) throw std::invalid_argument("extremum_on_torus: dimension guard (at most 8 variables)");
  if (f.is_zero()) return {0.0, std::vector<double>(nv, 0.0), std::vector<cplx>(nv, cplx{1.0, 0.0}), 0.0};
  if (nv == 0) {
    double v = std::abs(f.at(MultiIndex{}));
    return {v, {}, {}, 0.0};
  }

  std::int64_t res = cfg.grid > 0 ? cfg.grid : (nv <= 3 ? 256 : 64);
  auto total = [&](std::int64_t r) {
    double t = 1.0;
    for (std::size_t j = 0; j < nv; ++j) t *= static_cast<double>(r);
    return t;
  };
  while (res > 8 && total(res) > static_cast<double>(cfg.max_grid_evals)) --res;

  const auto cp = detail::CompiledPoly::compile(f);
  std::vector<std::vector<cplx>> lad;
  cp.prepare_scratch(lad);
  auto value_at = [&](const std::vector<double>& u) { return std::abs(cp.eval_phases(u.data(), lad)); };

  // Grid pass, keeping a small pool of the best cells for multistart.
  constexpr std::size_t kPool = 8;
  struct Cand {
    double v;
    std::vector<double> u;
  };
  std::vector<Cand> pool;
  auto offer = [&](double v, const std::vector<double>& u) {
    if (pool.size() < kPool) {
      pool.push_back({v, u});
    } else {
      std::size_t worst = 0;
      for (std::size_t i = 1; i < pool.size(); ++i) {
        bool w = maximize ? pool[i].v < pool[worst].v : pool[i].v > pool[worst].v;
        if (w) worst = i;
      }
      bool better = maximize ? v > pool[worst].v : v < pool[worst].v;
      if (better) pool[worst] = {v, u};
    }
  };

  std::vector<std::int64_t> idx(nv, 0);
  std::vector<double> u(nv, 0.0);
  const double step = 1.0 / static_cast<double>(res);
  for (;;) {
    for (std::size_t j = 0; j < nv; ++j) u[j] = static_cast<double>(idx[j]) * step;
    offer(value_at(u), u);
    std::size_t j = 0;
    while (j < nv && ++idx[j] == res) idx[j++] = 0;
    if (j == nv) break;
  }

  // Multistart cyclic coordinate refinement.
  const double tol_turns = cfg.refine_tol / (2.0 * std::numbers::pi);
  double best_v = maximize ? -1.0 : std::numeric_limits<double>::infinity();
  std::vector<double> best_u(nv, 0.0);
  for (auto& cand : pool) {
    std::vector<double> cur = cand.u;
    double curv = cand.v;
    for (int sweep = 0; sweep < 40; ++sweep) {
      double before = curv;
      for (std::size_t j = 0; j < nv; ++j) {
        auto slice = [&](double phi) {
          std::vector<double> probe = cur;
          probe[j] = phi;
          return value_at(probe);
        };
        auto [px, pv] = detail::golden_refine(slice, cur[j], step, tol_turns, maximize);
        bool better = maximize ? pv > curv : pv < curv;
        if (better) {
          cur[j] = px;
          curv = pv;
        }
      }
      double gain = maximize ? curv - before : before - curv;
      if (gain <= 1e-15 * (1.0 + std::abs(curv))) break;
    }
    bool better = maximize ? curv > best_v : curv < best_v;
    if (better) {
      best_v = curv;
      best_u = cur;
    }
  }

  ExtremumResult r;
  r.value = best_v;
  r.phases.resize(nv);
  r.omega.resize(nv);
  constexpr double tau = 2.0 * std::numbers::pi;
  for (std::size_t j = 0; j < nv; ++j) {
    double ph = best_u[j] - std::floor(best_u[j]);
    r.phases[j] = ph;
    r.omega[j] = std::polar(1.0, tau * ph);
  }
  r.phase_tol = cfg.refine_tol;
  return r;
}

}  // namespace dirichlet
