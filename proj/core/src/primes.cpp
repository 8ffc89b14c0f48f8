#include "rmf/primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmf/errors.hpp"

namespace rmf {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

// floor(v) clipped to [0, limit]; v is assumed finite.
std::uint64_t clip_floor(double v, std::uint32_t limit) {
  if (v < 0.0) return 0;
  if (v >= static_cast<double>(limit)) return limit;
  return static_cast<std::uint64_t>(std::floor(v));
}

void require_within(const PrimeTable& table, double x, const char* what) {
  require_finite(x, what);
  if (x > static_cast<double>(table.limit())) {
    throw RangeError(std::string(what) + " = " + std::to_string(x) +
                     " exceeds prime table limit " + std::to_string(table.limit()));
  }
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit) {
  if (limit < 2 || limit > kMaxLimit) {
    throw ConfigError("prime table limit must lie in [2, 2^31-1], got " +
                      std::to_string(limit));
  }
  limit_ = static_cast<std::uint32_t>(limit);
  lpf_.assign(static_cast<std::size_t>(limit_) + 1, 0);
  lpf_[1] = 1;
  // Ascending primes overwrite their multiples, so the last write is P(n).
  for (std::uint64_t p = 2; p <= limit_; ++p) {
    if (lpf_[p] != 0) continue;
    primes_.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p; m <= limit_; m += p) lpf_[m] = static_cast<std::uint32_t>(p);
  }
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_) throw RangeError("is_prime: " + std::to_string(n) + " exceeds table limit");
  return n >= 2 && lpf_[n] == n;
}

std::uint32_t PrimeTable::largest_prime_factor(std::uint64_t n) const {
  if (n == 0 || n > limit_) {
    throw RangeError("largest_prime_factor: n = " + std::to_string(n) +
                     " outside [1, " + std::to_string(limit_) + "]");
  }
  return lpf_[n];
}

std::span<const std::uint32_t> PrimeTable::primes_in(double lo, double hi) const {
  require_finite(lo, "lo");
  require_finite(hi, "hi");
  if (!(lo < hi)) return {};
  const auto lo_i = clip_floor(lo, limit_);
  const auto hi_i = clip_floor(hi, limit_);
  auto first = std::upper_bound(primes_.begin(), primes_.end(), lo_i);
  auto last = std::upper_bound(first, primes_.end(), hi_i);
  return {first, last};
}

std::size_t PrimeTable::prime_count(double x) const {
  require_finite(x, "x");
  const auto xi = clip_floor(x, limit_);
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), xi) -
                                  primes_.begin());
}

PrimeTable build_prime_table(std::uint64_t limit) { return PrimeTable(limit); }

std::uint32_t largest_prime_factor(const PrimeTable& table, std::uint64_t n) {
  return table.largest_prime_factor(n);
}

double mertens_sum(const PrimeTable& table, double x) {
  require_within(table, x, "mertens_sum x");
  double sum = 0.0;
  for (auto p : table.primes_in(0.0, x)) sum += 1.0 / p;
  return sum;
}

std::vector<std::uint64_t> rough_prefix_counts(const PrimeTable& table, std::uint64_t n_max,
                                               double y) {
  require_finite(y, "y");
  if (n_max > table.limit()) {
    throw RangeError("rough_prefix_counts: " + std::to_string(n_max) +
                     " exceeds table limit " + std::to_string(table.limit()));
  }
  std::vector<std::uint64_t> counts(n_max + 1, 0);
  if (n_max == 0) return counts;
  // rough[n] holds iff the smallest prime factor of n exceeds y. For composite n
  // the smallest prime factor of n equals that of n / P(n).
  std::vector<std::uint8_t> rough(n_max + 1, 0);
  rough[1] = 1;
  counts[1] = 1;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const std::uint32_t p = table.lpf_unchecked(static_cast<std::uint32_t>(n));
    rough[n] = (p == n) ? static_cast<std::uint8_t>(static_cast<double>(p) > y) : rough[n / p];
    counts[n] = counts[n - 1] + rough[n];
  }
  return counts;
}

std::uint64_t rough_count(const PrimeTable& table, RoughSmoothQuery q) {
  require_within(table, q.x, "rough_count x");
  if (q.x < 1.0) return 0;
  const auto n_max = static_cast<std::uint64_t>(std::floor(q.x));
  return rough_prefix_counts(table, n_max, q.y).back();
}

std::uint64_t smooth_count(const PrimeTable& table, RoughSmoothQuery q) {
  require_within(table, q.x, "smooth_count x");
  require_finite(q.y, "y");
  if (q.x < 1.0) return 0;
  const auto n_max = static_cast<std::uint32_t>(std::floor(q.x));
  std::uint64_t count = 1;  // n = 1
  for (std::uint32_t n = 2; n <= n_max; ++n) {
    if (static_cast<double>(table.lpf_unchecked(n)) <= q.y) ++count;
  }
  return count;
}

std::complex<double> prime_sum_oscillation(const PrimeTable& table, double x, double y,
                                           double t) {
  require_within(table, y, "prime_sum_oscillation y");
  require_finite(x, "x");
  require_finite(t, "t");
  if (x > y) throw DomainError("prime_sum_oscillation requires x <= y");
  double re = 0.0;
  double im = 0.0;
  for (auto p : table.primes_in(x, y)) {
    const double lp = std::log(static_cast<double>(p));
    const double w = 1.0 / p;
    re += w * std::cos(t * lp);
    im -= w * std::sin(t * lp);
  }
  return {re, im};
}

}  // namespace rmf
