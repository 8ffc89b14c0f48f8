#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rmf/primes.hpp"
#include "rmf/quadrature.hpp"
#include "rmf/sampler.hpp"

namespace rmf {

struct RoughIntegralReport {
  std::uint64_t x = 0;
  double B = 0.0;
  double W = 0.0;
  Complex lhs_numeric{};         // oscillatory integral over |u| <= W / log x
  double mid_rough_count = 0.0;  // (2 pi / x) sum_{sqrt(x) < p <= x} Phi(x/p, B)
  double rhs_asymptotic = 0.0;   // 2 pi e^{-gamma} log 2 / log B
  double lhs_error_estimate = 0.0;
  std::size_t panels_used = 0;
  bool converged = true;
};

/// Default window parameter W = max(4, (log log x)^2).
double default_rough_W(std::uint64_t x);

/// int_{-U}^{U} prod_{B < q <= sqrt(x)} (1 - q^{-1-iu})^{-1}
///              sum_{sqrt(x) < p <= x} x^{iu} p^{-1-iu} [du / (1 + iu)]
/// The bracketed Perron weight is applied when `perron_weight` is set; as U
/// grows the weighted integral tends to the rough-count form.
QuadratureResult<Complex> rough_perron_integral(const PrimeTable& table, std::uint64_t x,
                                                double B, double U, bool perron_weight,
                                                const QuadratureSpec& quad, unsigned threads = 1);

/// Requires 2 <= B <= sqrt(x) and x <= table.limit(). W <= 0 selects the default.
RoughIntegralReport rough_integral_three_ways(const PrimeTable& table, std::uint64_t x, double B,
                                              double W, const QuadratureSpec& quad,
                                              unsigned threads = 1);

struct GaussianityReport {
  std::uint64_t x = 0;
  Model model = Model::Steinhaus;
  std::uint64_t seed_small = 0;
  std::uint64_t n_small_seeds = 1;
  std::uint64_t n_large_resamples = 0;
  double ks_real = 0.0;
  std::optional<double> ks_imag;      // Steinhaus only
  std::optional<double> corr_re_im;   // Steinhaus only
  double variance_used = 0.0;         // V1 of the fixed small-prime data
};

/// Fixes f on p <= sqrt(x) via (seed_small, stream 0) and redraws the primes
/// above sqrt(x) from streams 1..n_large. Components are standardized by
/// sqrt(V1/2) (Steinhaus) or sqrt(V1) (Rademacher, real part only) and compared
/// with the standard normal.
GaussianityReport conditional_gaussianity(const PrimeTable& table, std::uint64_t x,
                                          std::uint64_t seed_small, std::uint64_t n_large,
                                          Model model = Model::Steinhaus, unsigned threads = 1);

/// Per-resample standardized components, in resample order (stream 1 first).
std::vector<Complex> conditional_standardized_samples(const PrimeTable& table, std::uint64_t x,
                                                      std::uint64_t seed_small,
                                                      std::uint64_t n_large, Model model,
                                                      unsigned threads, double* v1_out = nullptr);

struct ConcentrationReport {
  std::uint64_t x = 0;
  std::uint64_t n_trials = 0;
  Model model = Model::Steinhaus;
  int truncation_j = 0;
  std::uint64_t base_seed = 1;
  std::vector<std::pair<double, double>> pairs;  // (V1, V5) per seed
  double correlation = 0.0;    // Pearson, log V1 against log V5
  double median_ratio = 0.0;   // median of V1 / V5
  double mean_abs_diff = 0.0;  // mean |V1 - V5|
};

/// Fills the summary statistics of a report from its pairs.
void summarize_pairs(ConcentrationReport& report);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

ConcentrationReport concentration_experiment(const PrimeTable& table, std::uint64_t x,
                                             std::uint64_t n_trials, const QuadratureSpec& quad,
                                             Model model = Model::Steinhaus,
                                             int truncation_j = -1, std::uint64_t base_seed = 1,
                                             unsigned threads = 1);

}  // namespace rmf
