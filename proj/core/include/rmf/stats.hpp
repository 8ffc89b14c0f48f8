#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmf/primes.hpp"
#include "rmf/quadrature.hpp"
#include "rmf/sampler.hpp"

namespace rmf {

struct ExperimentConfig {
  Model model = Model::Steinhaus;
  std::vector<std::uint64_t> x_list{1000000};
  std::uint64_t n_trials = 100;
  std::uint64_t base_seed = 1;
  QuadratureSpec quad{};
  int truncation_j = -1;
  std::vector<double> q_list{0.5, 1.0, 1.5};
  std::vector<double> tail_thresholds{1.0, 1.5, 2.0, 3.0};
  bool with_v1 = false;
  bool with_v5 = false;
};

/// Throws ConfigError on an empty x_list, x < 16, q outside (0, 2), or a
/// threshold below 1.
void validate(const ExperimentConfig& cfg);

struct TrialRecord {
  std::uint64_t x = 0;
  std::uint64_t seed = 0;
  Complex normalized_sum{};
  double abs_value = 0.0;
  std::optional<double> v1;
  std::optional<double> v5;
  std::optional<std::string> error;
};

/// One realization: f drawn from (model, seed, stream 0).
TrialRecord run_trial(const ExperimentConfig& cfg, const PrimeTable& table, std::uint64_t x,
                      std::uint64_t seed);

/// Records ordered by (x index, trial index); seed = base_seed + trial index.
/// The output does not depend on `threads`.
std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg, const PrimeTable& table,
                                    unsigned threads = 1);

/// |normalized sum| of every successful record at scale x.
std::vector<double> abs_values_at(std::span<const TrialRecord> records, std::uint64_t x);

struct MomentEstimate {
  double value = 0.0;
  double std_err = 0.0;
};

/// Sample mean of v^q and its standard error. Requires 0 < q < 2 and at least
/// two samples.
MomentEstimate empirical_moment(std::span<const double> values, double q);

/// As empirical_moment, after clamping values above the given quantile.
MomentEstimate winsorized_moment(std::span<const double> values, double q,
                                 double upper_quantile = 0.999);

/// sup |F_n - F| by the order-statistics formula. Requires >= 10 samples.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

double standard_normal_cdf(double z);

struct TailFit {
  double alpha = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::vector<double> thresholds;
  double alpha_lower = 0.0;  // fit over the lower half of the threshold grid
  double alpha_upper = 0.0;  // fit over the upper half
  bool power_law_consistent = true;
};

inline constexpr double kTailQuantileLo = 0.8;
inline constexpr double kTailQuantileHi = 0.995;

/// Least-squares slope of log P(v > y) against log y, negated, with a
/// percentile bootstrap CI. An empty threshold list selects a log-spaced grid
/// between the 0.8 and 0.995 sample quantiles; explicit thresholds outside
/// that band are dropped. Requires >= 1000 samples.
TailFit tail_exponent(std::span<const double> values, std::span<const double> thresholds = {},
                      int bootstrap_resamples = 200, std::uint64_t bootstrap_seed = 0x5eed);

/// CDF of |sqrt(V) Z|, V uniform over the given samples and Z standard complex
/// normal: F(r) = mean(1 - exp(-r^2 / V)).
class MixtureModulusCdf {
 public:
  explicit MixtureModulusCdf(std::vector<double> variances);
  double operator()(double r) const;
  std::span<const double> variances() const noexcept { return variances_; }

 private:
  std::vector<double> variances_;
};

MixtureModulusCdf gaussian_mixture_reference(std::span<const double> v5_samples);

struct SummaryStats {
  struct Moment {
    std::uint64_t x;
    double q;
    double value;
    double std_err;
    std::optional<double> winsorized;
    std::optional<double> winsorized_std_err;
  };
  struct TailFrequency {
    std::uint64_t x;
    double y;
    double frequency;
  };
  struct TailExponent {
    std::uint64_t x;
    double alpha;
    double ci_lo;
    double ci_hi;
    bool power_law_consistent;
  };
  struct MixtureKs {
    std::uint64_t x;
    double ks;
  };

  std::vector<Moment> moments;
  std::vector<TailFrequency> tail_frequencies;
  std::vector<TailExponent> tail_exponents;  // only for x with >= 1000 records
  std::vector<MixtureKs> ks_to_gaussian_mixture;  // only when V5 was computed
};

SummaryStats summarize(const ExperimentConfig& cfg, std::span<const TrialRecord> records);

}  // namespace rmf
