#include "rmf/euler.hpp"

#include <algorithm>
#include <cassert>
#include <numbers>

namespace rmf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_phase(double phase) {
  double r = std::remainder(phase, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

// z = a * p^{-it} for one factor.
inline void rotated(const EulerFactor& f, double t, double& re, double& im) {
  const double theta = t * f.log_p;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  re = f.a_re * c + f.a_im * s;
  im = f.a_im * c - f.a_re * s;
}

void require_cutoff(const PrimeTable& table, double cutoff) {
  if (!std::isfinite(cutoff)) throw DomainError("cutoff must be finite");
  if (cutoff > static_cast<double>(table.limit())) {
    throw RangeError("cutoff " + std::to_string(cutoff) + " exceeds table limit " +
                     std::to_string(table.limit()));
  }
}

}  // namespace

double variance_constant() noexcept {
  return std::exp(-kEulerGamma) * std::numbers::ln2 / kTwoPi;
}

EulerProductValue log_euler_product(Model model, std::span<const EulerFactor> factors, double t) {
  const double sign = model == Model::Steinhaus ? -1.0 : 1.0;
  double log_mag = 0.0;
  double phase = 0.0;
  for (const auto& f : factors) {
    double zr = 0.0;
    double zi = 0.0;
    rotated(f, t, zr, zi);
    // Steinhaus factor (1 - z)^{-1}, Rademacher factor (1 + z).
    const double wr = 1.0 + sign * zr;
    const double wi = sign * zi;
    const double mod2 = wr * wr + wi * wi;
    assert(mod2 > 0.0);  // |z| <= 2^{-1/2}
    log_mag += sign * 0.5 * std::log(mod2);
    phase += sign * std::atan2(wi, wr);
  }
  return {log_mag, reduce_phase(phase)};
}

double log_abs2_euler_product(Model model, std::span<const EulerFactor> factors, double t) {
  const double sign = model == Model::Steinhaus ? -1.0 : 1.0;
  double acc = 0.0;
  for (const auto& f : factors) {
    double zr = 0.0;
    double zi = 0.0;
    rotated(f, t, zr, zi);
    const double wr = 1.0 + sign * zr;
    acc += std::log(wr * wr + zi * zi);
  }
  return sign * acc;
}

double mean_square_exact(const PrimeTable& table, Model model, double cutoff) {
  require_cutoff(table, cutoff);
  double log_sum = 0.0;
  for (const auto p : table.primes_in(0.0, cutoff)) {
    const double inv = 1.0 / p;
    log_sum += model == Model::Steinhaus ? -std::log1p(-inv) : std::log1p(inv);
  }
  return std::exp(log_sum);
}

Complex pair_expectation_exact(const PrimeTable& table, Model model, double lo, double hi,
                               double t1, double t2) {
  require_cutoff(table, hi);
  if (!std::isfinite(lo) || lo > hi) throw DomainError("pair_expectation_exact requires lo <= hi");
  const double dt = t1 - t2;
  Complex log_sum{0.0, 0.0};
  for (const auto p : table.primes_in(lo, hi)) {
    const double lp = std::log(static_cast<double>(p));
    const Complex w = std::polar(1.0 / p, -dt * lp);  // p^{-1 - i dt}
    if (model == Model::Steinhaus) {
      log_sum -= std::log(1.0 - w);
    } else {
      log_sum += std::log(1.0 + w);
    }
  }
  return std::exp(log_sum);
}

int default_truncation_j(std::uint64_t x) {
  const double lx = std::log(static_cast<double>(x));
  if (!(lx > 1.0)) return 0;
  const double lllx = std::log(std::log(lx));
  if (!(lllx > 0.0)) return 0;
  const int raw_j = static_cast<int>(std::floor(100.0 * lllx));
  // sqrt(x)^{e^{-j}} >= x^{1/10}  <=>  e^{-j} >= 1/5.
  const int max_j = static_cast<int>(std::floor(std::log(5.0)));
  return std::max(0, std::min(raw_j, max_j));
}

double default_quad_T(std::uint64_t x) {
  const double llx = std::log(std::log(static_cast<double>(x)));
  return std::min(1000.0, std::max(10.0, std::pow(llx, 4.0)));
}

int effective_truncation_j(std::uint64_t x, int requested_j) {
  int j = requested_j < 0 ? default_truncation_j(x) : requested_j;
  while (j > 0 && EulerCutoffs{x, j}.cutoff() < 11.0) --j;
  if (!(EulerCutoffs{x, j}.cutoff() > std::numbers::e)) {
    throw DomainError("V5 cutoff must exceed e so that log log B > 0");
  }
  return j;
}

V5Result v5_from_factors(Model model, std::span<const EulerFactor> factors, std::uint64_t x,
                         int j, const PrimeTable& table, const QuadratureSpec& quad) {
  validate(quad);
  V5Result out;
  out.j = j;
  out.B = EulerCutoffs{x, j}.cutoff();
  out.T = quad.T > 0.0 ? quad.T : default_quad_T(x);

  const double log_b = std::log(out.B);
  const double c = variance_constant();
  const double prefactor = c * std::sqrt(std::log(log_b)) / log_b;

  auto integrand = [&](double t) {
    return std::exp(log_abs2_euler_product(model, factors, t)) / (0.25 + t * t);
  };
  // |F(1/2+it)|^2 varies on the scale 1 / log B; no initial panel is wider
  // than half of that.
  const auto panels =
      static_cast<std::size_t>(std::ceil(2.0 * out.T / (0.5 / std::max(log_b, 1.0))));
  const auto q = integrate_adaptive(integrand, -out.T, out.T, panels, quad);

  out.q_integral = q.value;
  out.panels_used = q.panels_used;
  out.converged = q.converged;
  out.value = prefactor * q.value;
  out.value_loglog_x = c * std::sqrt(std::log(std::log(static_cast<double>(x)))) / log_b * q.value;
  // int_{|t| > T} dt / (1/4 + t^2) = 4 (pi/2 - atan(2T)).
  const double tail_weight = 4.0 * (0.5 * std::numbers::pi - std::atan(2.0 * out.T));
  out.tail_bound = prefactor * mean_square_exact(table, model, out.B) * tail_weight;
  return out;
}

double v1_from_prefix(const PrimeTable& table, std::uint64_t x, std::span<const Complex> prefix) {
  if (x < 16) throw DomainError("V1 requires x >= 16");
  if (x > table.limit()) throw RangeError("V1: x exceeds table limit");
  const std::uint64_t root = isqrt(x);
  if (prefix.size() <= root) throw RangeError("V1: prefix too short");
  // Primes with floor(x/p) = k are those in (x/(k+1), x/k]; only p > root count.
  const std::uint64_t k_max = x / (root + 1);
  double sum = 0.0;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const std::uint64_t hi = x / k;
    const std::uint64_t lo = std::max(x / (k + 1), root);
    if (hi <= lo) continue;
    const auto count = table.prime_count(static_cast<double>(hi)) -
                       table.prime_count(static_cast<double>(lo));
    sum += static_cast<double>(count) * std::norm(prefix[k]);
  }
  return std::sqrt(std::log(std::log(static_cast<double>(x)))) / static_cast<double>(x) * sum;
}

double v1_expectation(const PrimeTable& table, Model model, std::uint64_t x) {
  if (x < 16) throw DomainError("V1 requires x >= 16");
  if (x > table.limit()) throw RangeError("V1: x exceeds table limit");
  const std::uint64_t root = isqrt(x);
  std::vector<double> second_moment(root + 1, 0.0);
  if (model == Model::Steinhaus) {
    for (std::uint64_t k = 0; k <= root; ++k) second_moment[k] = static_cast<double>(k);
  } else {
    std::vector<std::uint8_t> squarefree(root + 1, 0);
    if (root >= 1) {
      squarefree[1] = 1;
      second_moment[1] = 1.0;
    }
    for (std::uint64_t n = 2; n <= root; ++n) {
      const std::uint32_t p = table.lpf_unchecked(static_cast<std::uint32_t>(n));
      const std::uint64_t m = n / p;
      squarefree[n] = (m % p != 0 || m == 1) && squarefree[m];
      second_moment[n] = second_moment[n - 1] + squarefree[n];
    }
  }
  std::vector<Complex> as_prefix(root + 1);
  for (std::uint64_t k = 0; k <= root; ++k) as_prefix[k] = {std::sqrt(second_moment[k]), 0.0};
  return v1_from_prefix(table, x, as_prefix);
}

}  // namespace rmf
