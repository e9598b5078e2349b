#pragma once

// Product Fejer sections: coefficient multipliers w(alpha) given by the
// tensor of one-dimensional triangular weights, and the complementary
// remainder. The section of order n keeps degrees up to n in each variable.

#include "dirichlet/bohr.hpp"

namespace dirichlet {

struct FejerSpec {
  int order = 1;    // n of the section sigma_n
  int nvars = 1;
};

// w(alpha) = prod_j max(0, 1 - alpha_j / (n + 1)), a value in [0, 1].
inline double fejer_weight(const MultiIndex& alpha, int order) {
  if (order < 0) throw std::invalid_argument("Fejer order must be nonnegative");
  double w = 1.0;
  const double np1 = static_cast<double>(order) + 1.0;
  for (const auto& f : alpha.factors()) {
    double wj = 1.0 - static_cast<double>(f.e) / np1;
    if (wj <= 0.0) return 0.0;
    w *= wj;
  }
  return w;
}

inline TorusPoly fejer_apply(const TorusPoly& f, const FejerSpec& spec) {
  if (f.nvars() > static_cast<std::size_t>(spec.nvars))
    throw std::invalid_argument("Fejer spec covers " + std::to_string(spec.nvars) +
                                " variables, polynomial uses " + std::to_string(f.nvars()));
  TorusPoly out;
  out.set_nvars(f.nvars());
  for (const auto& [a, c] : f.terms()) {
    double w = fejer_weight(a, spec.order);
    if (w != 0.0) out.set(a, c * w);
  }
  return out;
}

inline TorusPoly fejer_remainder(const TorusPoly& f, const FejerSpec& spec) {
  TorusPoly out = f;
  out -= fejer_apply(f, spec);
  return out;
}

}  // namespace dirichlet
