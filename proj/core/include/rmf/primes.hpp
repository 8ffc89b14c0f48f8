#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace rmf {

/// Sieve table over [0, limit]: primality, largest prime factor, and the
/// ascending list of primes. Immutable once built; safe to share between
/// threads.
class PrimeTable {
 public:
  static constexpr std::uint64_t kMaxLimit = (std::uint64_t{1} << 31) - 1;

  /// Throws ConfigError unless 2 <= limit <= 2^31 - 1.
  explicit PrimeTable(std::uint64_t limit);

  std::uint32_t limit() const noexcept { return limit_; }

  bool is_prime(std::uint64_t n) const;

  /// P(n), with P(1) = 1. Throws RangeError for n == 0 or n > limit.
  std::uint32_t largest_prime_factor(std::uint64_t n) const;

  /// Unchecked variant for hot loops; n must lie in [1, limit].
  std::uint32_t lpf_unchecked(std::uint32_t n) const noexcept { return lpf_[n]; }

  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  /// Primes p with lo < p <= hi, clipped to the table.
  std::span<const std::uint32_t> primes_in(double lo, double hi) const;

  /// Number of primes <= x (x clipped to the table).
  std::size_t prime_count(double x) const;

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> lpf_;
  std::vector<std::uint32_t> primes_;
};

PrimeTable build_prime_table(std::uint64_t limit);

std::uint32_t largest_prime_factor(const PrimeTable& table, std::uint64_t n);

/// Sum of 1/p over p <= x, accumulated in ascending p.
double mertens_sum(const PrimeTable& table, double x);

struct RoughSmoothQuery {
  double x = 1.0;
  double y = 2.0;
};

/// Phi(x, y): n <= x all of whose prime factors exceed y (n = 1 included).
std::uint64_t rough_count(const PrimeTable& table, RoughSmoothQuery q);

/// Psi(x, y): n <= x with P(n) <= y (n = 1 included).
std::uint64_t smooth_count(const PrimeTable& table, RoughSmoothQuery q);

/// counts[m] = Phi(m, y) for m = 0..n_max, so a whole family of rough counts
/// costs one linear pass.
std::vector<std::uint64_t> rough_prefix_counts(const PrimeTable& table, std::uint64_t n_max,
                                               double y);

/// Sum over x < p <= y of p^{-1-it}.
std::complex<double> prime_sum_oscillation(const PrimeTable& table, double x, double y,
                                           double t);

}  // namespace rmf
