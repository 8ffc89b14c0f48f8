#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "rmf/errors.hpp"

namespace rmf {

struct QuadratureSpec {
  double T = 0.0;  // half-width of the t-range; <= 0 selects the per-x default
  int max_depth = 12;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
};

void validate(const QuadratureSpec& spec);

template <class V>
struct QuadratureResult {
  V value{};
  double error_estimate = 0.0;
  std::size_t panels_used = 0;
  bool converged = true;
};

namespace detail {

struct GaussLegendre15 {
  std::array<double, 15> nodes;
  std::array<double, 15> weights;
};

const GaussLegendre15& gauss_legendre_15();

template <class F>
auto gl15_panel(F& f, double a, double b) {
  using V = std::decay_t<decltype(f(a))>;
  const auto& rule = gauss_legendre_15();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  V acc{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return V(acc * half);
}

template <class F, class V>
void refine(F& f, double a, double b, V coarse, int depth, double tol_per_width,
            const QuadratureSpec& spec, QuadratureResult<V>& out) {
  const double mid = 0.5 * (a + b);
  const V left = gl15_panel(f, a, mid);
  const V right = gl15_panel(f, mid, b);
  const V fine = left + right;
  const double err = std::abs(fine - coarse);
  const double tol = tol_per_width * (b - a);
  if (err <= tol || depth >= spec.max_depth) {
    if (err > tol) out.converged = false;
    out.value += fine;
    out.error_estimate += err;
    out.panels_used += 2;
    return;
  }
  refine(f, a, mid, left, depth + 1, tol_per_width, spec, out);
  refine(f, mid, b, right, depth + 1, tol_per_width, spec, out);
}

}  // namespace detail

/// Adaptive integration of f over [a, b]: the range is first cut into
/// `initial_panels` equal panels, then each panel is bisected until the 15-point
/// rule on the whole panel agrees with the sum over its halves. The panel tree
/// is walked in a fixed order, so results are reproducible bit for bit.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, std::size_t initial_panels,
                        const QuadratureSpec& spec) {
  using V = std::decay_t<decltype(f(a))>;
  validate(spec);
  if (!(a < b)) throw DomainError("integrate_adaptive requires a < b");
  if (initial_panels == 0) initial_panels = 1;
  const double width = (b - a) / static_cast<double>(initial_panels);

  std::vector<V> coarse(initial_panels);
  double scale = 0.0;
  {
    V total{};
    for (std::size_t i = 0; i < initial_panels; ++i) {
      const double lo = a + width * static_cast<double>(i);
      coarse[i] = detail::gl15_panel(f, lo, lo + width);
      total += coarse[i];
    }
    scale = std::abs(total);
  }
  const double tol_per_width = std::max(spec.abs_tol, spec.rel_tol * scale) / (b - a);

  QuadratureResult<V> out;
  for (std::size_t i = 0; i < initial_panels; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == initial_panels) ? b : lo + width;
    detail::refine(f, lo, hi, coarse[i], 1, tol_per_width, spec, out);
  }
  return out;
}

}  // namespace rmf
