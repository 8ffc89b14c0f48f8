#include "rmf/quadrature.hpp"

#include <numbers>

namespace rmf {

void validate(const QuadratureSpec& spec) {
  if (!std::isfinite(spec.T)) throw ConfigError("quadrature T must be finite");
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
    throw ConfigError("quadrature tolerances must be positive");
  }
  if (spec.max_depth < 1 || spec.max_depth > 40) {
    throw ConfigError("quadrature max_depth must lie in [1, 40]");
  }
}

namespace detail {

namespace {

// Nodes are the roots of P_15, found by Newton iteration from Chebyshev guesses.
GaussLegendre15 build_rule() {
  constexpr int n = 15;
  GaussLegendre15 rule{};
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussLegendre15& gauss_legendre_15() {
  static const GaussLegendre15 rule = build_rule();
  return rule;
}

}  // namespace detail

}  // namespace rmf
