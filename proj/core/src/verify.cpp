#include "rmf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rmf/euler.hpp"
#include "rmf/parallel.hpp"
#include "rmf/stats.hpp"

namespace rmf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Partial sums over fixed chunks, combined in chunk order, so the result is
// the same for every thread count.
constexpr std::size_t kSumChunks = 64;

struct LargePrimeTerms {
  std::vector<double> log_ratio;  // log(x / p)
  std::vector<double> weight;     // 1 / p
};

}  // namespace

double default_rough_W(std::uint64_t x) {
  const double llx = std::log(std::log(static_cast<double>(x)));
  return std::max(4.0, llx * llx);
}

QuadratureResult<Complex> rough_perron_integral(const PrimeTable& table, std::uint64_t x,
                                                double B, double U, bool perron_weight,
                                                const QuadratureSpec& quad, unsigned threads) {
  if (x > table.limit()) throw RangeError("rough integral: x exceeds table limit");
  if (!(U > 0.0) || !std::isfinite(U)) throw DomainError("rough integral: U must be positive");
  const std::uint64_t root = isqrt(x);
  const double lx = std::log(static_cast<double>(x));

  LargePrimeTerms large;
  for (const auto p : table.primes_in(static_cast<double>(root), static_cast<double>(x))) {
    large.log_ratio.push_back(lx - std::log(static_cast<double>(p)));
    large.weight.push_back(1.0 / p);
  }
  std::vector<std::pair<double, double>> small;  // (log q, 1/q)
  for (const auto q : table.primes_in(B, static_cast<double>(root))) {
    small.emplace_back(std::log(static_cast<double>(q)), 1.0 / q);
  }

  const std::size_t n_large = large.weight.size();
  const std::size_t chunk = (n_large + kSumChunks - 1) / kSumChunks;
  std::vector<Complex> partial(kSumChunks);

  auto integrand = [&](double u) -> Complex {
    parallel_for(kSumChunks, threads, [&](std::size_t c) {
      const std::size_t begin = std::min(n_large, c * chunk);
      const std::size_t end = std::min(n_large, begin + chunk);
      double re = 0.0;
      double im = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        const double theta = u * large.log_ratio[i];
        re += large.weight[i] * std::cos(theta);
        im += large.weight[i] * std::sin(theta);
      }
      partial[c] = {re, im};
    });
    Complex prime_sum{0.0, 0.0};
    for (const auto& v : partial) prime_sum += v;

    // log prod (1 - q^{-1-iu})^{-1}
    Complex log_prod{0.0, 0.0};
    for (const auto& [log_q, inv_q] : small) {
      log_prod -= std::log(1.0 - std::polar(inv_q, -u * log_q));
    }
    Complex value = std::exp(log_prod) * prime_sum;
    if (perron_weight) value /= Complex(1.0, u);
    return value;
  };

  // The integrand oscillates at frequencies up to about log x.
  const auto panels = static_cast<std::size_t>(std::ceil(U * lx));
  return integrate_adaptive(integrand, -U, U, std::max<std::size_t>(panels, 2), quad);
}

RoughIntegralReport rough_integral_three_ways(const PrimeTable& table, std::uint64_t x, double B,
                                              double W, const QuadratureSpec& quad,
                                              unsigned threads) {
  if (x > table.limit()) {
    throw RangeError("rough integral: x = " + std::to_string(x) + " exceeds table limit " +
                     std::to_string(table.limit()));
  }
  if (x < 16) throw DomainError("rough integral requires x >= 16");
  const std::uint64_t root = isqrt(x);
  if (!(B >= 2.0) || B > std::sqrt(static_cast<double>(x))) {
    throw DomainError("rough integral requires 2 <= B <= sqrt(x)");
  }
  RoughIntegralReport rep;
  rep.x = x;
  rep.B = B;
  rep.W = W > 0.0 ? W : default_rough_W(x);
  const double lx = std::log(static_cast<double>(x));

  const auto lhs = rough_perron_integral(table, x, B, rep.W / lx, false, quad, threads);
  rep.lhs_numeric = lhs.value;
  rep.lhs_error_estimate = lhs.error_estimate;
  rep.panels_used = lhs.panels_used;
  rep.converged = lhs.converged;

  const auto phi = rough_prefix_counts(table, x / (root + 1), B);
  std::uint64_t total = 0;
  for (const auto p : table.primes_in(static_cast<double>(root), static_cast<double>(x))) {
    total += phi[x / p];
  }
  rep.mid_rough_count = kTwoPi * static_cast<double>(total) / static_cast<double>(x);
  rep.rhs_asymptotic = kTwoPi * std::exp(-kEulerGamma) * std::numbers::ln2 / std::log(B);
  return rep;
}

std::vector<Complex> conditional_standardized_samples(const PrimeTable& table, std::uint64_t x,
                                                      std::uint64_t seed_small,
                                                      std::uint64_t n_large, Model model,
                                                      unsigned threads, double* v1_out) {
  if (x > table.limit()) {
    throw RangeError("conditional_gaussianity: x = " + std::to_string(x) +
                     " exceeds table limit " + std::to_string(table.limit()));
  }
  if (x < 16) throw DomainError("conditional_gaussianity requires x >= 16");
  const RmfSampler small(model, seed_small, 0);
  const auto prefix = partial_sum_prefix(small, table, isqrt(x));
  const double v1 = v1_from_prefix(table, x, prefix);
  if (!(v1 > 0.0)) throw DomainError("conditional_gaussianity: V1 = 0 for this small-prime seed");
  if (v1_out) *v1_out = v1;

  const double sigma = std::sqrt(model == Model::Steinhaus ? 0.5 * v1 : v1);
  const double scale = normalization(static_cast<double>(x)) / sigma;
  std::vector<Complex> out(n_large);
  parallel_for(n_large, threads, [&](std::size_t i) {
    const RmfSampler large(model, seed_small, i + 1);
    const Complex s = restricted_sum_from_prefix(large, table, x, prefix);
    out[i] = {s.real() * scale, s.imag() * scale};
  });
  return out;
}

GaussianityReport conditional_gaussianity(const PrimeTable& table, std::uint64_t x,
                                          std::uint64_t seed_small, std::uint64_t n_large,
                                          Model model, unsigned threads) {
  if (n_large < 1000) throw ConfigError("conditional_gaussianity requires n_large >= 1000");
  GaussianityReport rep;
  rep.x = x;
  rep.model = model;
  rep.seed_small = seed_small;
  rep.n_large_resamples = n_large;
  const auto samples =
      conditional_standardized_samples(table, x, seed_small, n_large, model, threads,
                                       &rep.variance_used);
  std::vector<double> re(samples.size());
  std::vector<double> im(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    re[i] = samples[i].real();
    im[i] = samples[i].imag();
  }
  rep.ks_real = ks_distance(re, standard_normal_cdf);
  if (model == Model::Steinhaus) {
    rep.ks_imag = ks_distance(im, standard_normal_cdf);
    rep.corr_re_im = pearson_correlation(re, im);
  }
  return rep;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw DomainError("pearson_correlation needs two equal-length samples of size >= 2");
  }
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) return 0.0;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

void summarize_pairs(ConcentrationReport& report) {
  const auto& pairs = report.pairs;
  if (pairs.size() < 2) throw DomainError("concentration summary needs at least two pairs");
  std::vector<double> l1;
  std::vector<double> l5;
  std::vector<double> ratio;
  double abs_diff = 0.0;
  for (const auto& [v1, v5] : pairs) {
    l1.push_back(std::log(v1));
    l5.push_back(std::log(v5));
    ratio.push_back(v1 / v5);
    abs_diff += std::abs(v1 - v5);
  }
  report.n_trials = pairs.size();
  report.correlation = pearson_correlation(l1, l5);
  std::sort(ratio.begin(), ratio.end());
  const std::size_t mid = ratio.size() / 2;
  report.median_ratio =
      ratio.size() % 2 == 1 ? ratio[mid] : 0.5 * (ratio[mid - 1] + ratio[mid]);
  report.mean_abs_diff = abs_diff / static_cast<double>(pairs.size());
}

ConcentrationReport concentration_experiment(const PrimeTable& table, std::uint64_t x,
                                             std::uint64_t n_trials, const QuadratureSpec& quad,
                                             Model model, int truncation_j,
                                             std::uint64_t base_seed, unsigned threads) {
  if (n_trials < 50) throw ConfigError("concentration_experiment requires n_trials >= 50");
  if (x > table.limit()) {
    throw RangeError("concentration_experiment: x = " + std::to_string(x) +
                     " exceeds table limit " + std::to_string(table.limit()));
  }
  ConcentrationReport rep;
  rep.x = x;
  rep.model = model;
  rep.base_seed = base_seed;
  rep.truncation_j = effective_truncation_j(x, truncation_j);
  rep.pairs.resize(n_trials);
  parallel_for(n_trials, threads, [&](std::size_t i) {
    const RmfSampler s(model, base_seed + i, 0);
    const auto prefix = partial_sum_prefix(s, table, isqrt(x));
    const double v1 = v1_from_prefix(table, x, prefix);
    const double v5 = v5_integral(s, table, x, quad, rep.truncation_j).value;
    rep.pairs[i] = {v1, v5};
  });
  summarize_pairs(rep);
  return rep;
}

}  // namespace rmf
