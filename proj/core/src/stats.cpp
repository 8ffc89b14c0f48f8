#include "rmf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <new>
#include <numbers>
#include <numeric>
#include <random>

#include "rmf/euler.hpp"
#include "rmf/parallel.hpp"

namespace rmf {

namespace {

// Linear-interpolation quantile of sorted data.
double quantile_sorted(std::span<const double> sorted, double prob) {
  const double pos = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

struct SlopeFit {
  double alpha;
  bool ok;
};

SlopeFit fit_tail_slope(std::span<const double> sorted, std::span<const double> thresholds) {
  std::vector<double> lx;
  std::vector<double> ly;
  const double n = static_cast<double>(sorted.size());
  for (const double y : thresholds) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), y);
    if (above <= 0 || y <= 0.0) continue;
    lx.push_back(std::log(y));
    ly.push_back(std::log(static_cast<double>(above) / n));
  }
  if (lx.size() < 2) return {0.0, false};
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) return {0.0, false};
  return {-sxy / sxx, true};
}

std::vector<double> quantile_grid(std::span<const double> sorted, std::size_t points) {
  const double lo = quantile_sorted(sorted, kTailQuantileLo);
  const double hi = quantile_sorted(sorted, kTailQuantileHi);
  std::vector<double> grid;
  if (!(lo > 0.0) || !(hi > lo)) return grid;
  for (std::size_t i = 0; i < points; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(points - 1);
    grid.push_back(std::exp(std::log(lo) + frac * (std::log(hi) - std::log(lo))));
  }
  return grid;
}

std::vector<double> thresholds_in_band(std::span<const double> sorted,
                                       std::span<const double> requested) {
  if (requested.empty()) return quantile_grid(sorted, 16);
  const double lo = quantile_sorted(sorted, kTailQuantileLo);
  const double hi = quantile_sorted(sorted, kTailQuantileHi);
  std::vector<double> out;
  for (const double y : requested) {
    if (y >= lo && y <= hi) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.x_list.empty()) throw ConfigError("x_list must not be empty");
  for (const auto x : cfg.x_list) {
    if (x < 16) throw ConfigError("every x must be >= 16");
  }
  for (const double q : cfg.q_list) {
    if (!(q > 0.0 && q < 2.0)) throw ConfigError("moment orders must lie in (0, 2)");
  }
  for (const double y : cfg.tail_thresholds) {
    if (!(y >= 1.0) || !std::isfinite(y)) throw ConfigError("tail thresholds must be >= 1");
  }
  validate(cfg.quad);
}

TrialRecord run_trial(const ExperimentConfig& cfg, const PrimeTable& table, std::uint64_t x,
                      std::uint64_t seed) {
  TrialRecord rec;
  rec.x = x;
  rec.seed = seed;
  try {
    const RmfSampler sampler(cfg.model, seed, 0);
    const auto prefix = partial_sum_prefix(sampler, table, isqrt(x));
    rec.normalized_sum =
        normalize_sum(restricted_sum_from_prefix(sampler, table, x, prefix), static_cast<double>(x));
    rec.abs_value = std::abs(rec.normalized_sum);
    if (cfg.with_v1) rec.v1 = v1_from_prefix(table, x, prefix);
    if (cfg.with_v5) rec.v5 = v5_integral(sampler, table, x, cfg.quad, cfg.truncation_j).value;
  } catch (const std::bad_alloc&) {
    rec.error = "out of memory";
  }
  return rec;
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg, const PrimeTable& table,
                                    unsigned threads) {
  validate(cfg);
  const auto max_x = *std::max_element(cfg.x_list.begin(), cfg.x_list.end());
  if (max_x > table.limit()) {
    throw RangeError("x = " + std::to_string(max_x) + " exceeds prime table limit " +
                     std::to_string(table.limit()));
  }
  const std::size_t per_x = cfg.n_trials;
  std::vector<TrialRecord> records(cfg.x_list.size() * per_x);
  parallel_for(records.size(), threads, [&](std::size_t i) {
    const auto x = cfg.x_list[i / per_x];
    records[i] = run_trial(cfg, table, x, cfg.base_seed + i % per_x);
  });
  return records;
}

std::vector<double> abs_values_at(std::span<const TrialRecord> records, std::uint64_t x) {
  std::vector<double> out;
  for (const auto& r : records) {
    if (r.x == x && !r.error) out.push_back(r.abs_value);
  }
  return out;
}

MomentEstimate empirical_moment(std::span<const double> values, double q) {
  if (!(q > 0.0 && q < 2.0)) throw DomainError("moment order must lie in (0, 2)");
  if (values.size() < 2) throw DomainError("empirical_moment needs at least two samples");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (const double v : values) mean += std::pow(v, q);
  mean /= n;
  double ss = 0.0;
  for (const double v : values) {
    const double d = std::pow(v, q) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

MomentEstimate winsorized_moment(std::span<const double> values, double q,
                                 double upper_quantile) {
  if (values.size() < 2) throw DomainError("winsorized_moment needs at least two samples");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double cap = quantile_sorted(sorted, upper_quantile);
  for (auto& v : sorted) v = std::min(v, cap);
  return empirical_moment(sorted, q);
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.size() < 10) throw DomainError("ks_distance needs at least 10 samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

TailFit tail_exponent(std::span<const double> values, std::span<const double> thresholds,
                      int bootstrap_resamples, std::uint64_t bootstrap_seed) {
  if (values.size() < 1000) throw DomainError("tail_exponent needs at least 1000 samples");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  TailFit fit;
  fit.thresholds = thresholds_in_band(sorted, thresholds);
  const auto full = fit_tail_slope(sorted, fit.thresholds);
  if (!full.ok) throw DomainError("tail_exponent: fewer than two usable thresholds");
  fit.alpha = full.alpha;

  const std::size_t half = fit.thresholds.size() / 2;
  const std::span<const double> grid(fit.thresholds);
  const auto lower = fit_tail_slope(sorted, grid.first(std::max<std::size_t>(half + 1, 2)));
  const auto upper = fit_tail_slope(sorted, grid.last(std::max<std::size_t>(grid.size() - half, 2)));
  fit.alpha_lower = lower.ok ? lower.alpha : fit.alpha;
  fit.alpha_upper = upper.ok ? upper.alpha : fit.alpha;
  // A power law has the same slope across the band; curvature in log-log
  // coordinates shows up as a steeper upper half.
  fit.power_law_consistent =
      std::abs(fit.alpha_upper - fit.alpha_lower) <= 0.25 * std::max(std::abs(fit.alpha), 1.0);

  std::mt19937_64 rng(bootstrap_seed);
  std::uniform_int_distribution<std::size_t> pick(0, sorted.size() - 1);
  std::vector<double> alphas;
  std::vector<double> resample(sorted.size());
  for (int b = 0; b < bootstrap_resamples; ++b) {
    for (auto& v : resample) v = sorted[pick(rng)];
    std::sort(resample.begin(), resample.end());
    const auto grid_b = thresholds.empty() ? quantile_grid(resample, 16) : fit.thresholds;
    const auto r = fit_tail_slope(resample, grid_b);
    if (r.ok) alphas.push_back(r.alpha);
  }
  if (alphas.size() >= 2) {
    std::sort(alphas.begin(), alphas.end());
    fit.ci_lo = quantile_sorted(alphas, 0.025);
    fit.ci_hi = quantile_sorted(alphas, 0.975);
  } else {
    fit.ci_lo = fit.ci_hi = fit.alpha;
  }
  return fit;
}

MixtureModulusCdf::MixtureModulusCdf(std::vector<double> variances)
    : variances_(std::move(variances)) {
  if (variances_.empty()) throw DomainError("mixture reference needs at least one sample");
  for (const double v : variances_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("mixture variances must be finite and non-negative");
    }
  }
}

double MixtureModulusCdf::operator()(double r) const {
  if (!(r > 0.0)) return 0.0;
  if (std::isinf(r)) return 1.0;
  double acc = 0.0;
  for (const double v : variances_) acc += v > 0.0 ? -std::expm1(-r * r / v) : 1.0;
  return acc / static_cast<double>(variances_.size());
}

MixtureModulusCdf gaussian_mixture_reference(std::span<const double> v5_samples) {
  return MixtureModulusCdf(std::vector<double>(v5_samples.begin(), v5_samples.end()));
}

SummaryStats summarize(const ExperimentConfig& cfg, std::span<const TrialRecord> records) {
  SummaryStats out;
  for (const auto x : cfg.x_list) {
    const auto values = abs_values_at(records, x);
    if (values.size() < 2) continue;
    for (const double q : cfg.q_list) {
      const auto m = empirical_moment(values, q);
      SummaryStats::Moment entry{x, q, m.value, m.std_err, std::nullopt, std::nullopt};
      if (q > 1.0) {
        const auto w = winsorized_moment(values, q);
        entry.winsorized = w.value;
        entry.winsorized_std_err = w.std_err;
      }
      out.moments.push_back(entry);
    }
    for (const double y : cfg.tail_thresholds) {
      const auto above = std::count_if(values.begin(), values.end(), [y](double v) { return v > y; });
      out.tail_frequencies.push_back(
          {x, y, static_cast<double>(above) / static_cast<double>(values.size())});
    }
    if (values.size() >= 1000) {
      try {
        const auto fit = tail_exponent(values);
        out.tail_exponents.push_back({x, fit.alpha, fit.ci_lo, fit.ci_hi, fit.power_law_consistent});
      } catch (const DomainError&) {
        // Degenerate tail (e.g. constant samples): nothing to report.
      }
    }
    std::vector<double> v5;
    for (const auto& r : records) {
      if (r.x == x && r.v5 && !r.error) v5.push_back(*r.v5);
    }
    if (!v5.empty() && values.size() >= 10) {
      const auto ref = gaussian_mixture_reference(v5);
      out.ks_to_gaussian_mixture.push_back({x, ks_distance(values, std::cref(ref))});
    }
  }
  return out;
}

}  // namespace rmf
