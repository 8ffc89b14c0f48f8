#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rmf/errors.hpp"
#include "rmf/primes.hpp"

namespace rmf {

using Complex = std::complex<double>;

enum class Model { Steinhaus, Rademacher };

std::string_view to_string(Model model) noexcept;

/// Accepts "steinhaus" or "rademacher"; throws ConfigError otherwise.
Model parse_model(std::string_view name);

namespace detail {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed + kGolden) ^ mix64(stream * kGolden + 0x632be59bd9b4e019ULL));
}

// Plain complex product; std::complex operator* carries NaN/Inf recovery that
// dominates the inner loops.
inline Complex mul(Complex a, Complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace detail

/// f(p) as a pure function of (model, seed, stream, p). Values are produced by
/// a keyed hash of p, so any prime can be queried in any order.
class RmfSampler {
 public:
  RmfSampler(Model model, std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : model_(model), seed_(seed), stream_(stream), key_(detail::stream_key(seed, stream)) {}

  Model model() const noexcept { return model_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Raw 64 hash bits for prime p.
  std::uint64_t bits(std::uint64_t p) const noexcept {
    return detail::mix64(detail::mix64(key_ ^ (p * detail::kGolden)) + key_);
  }

  Complex at_prime(std::uint64_t p) const noexcept {
    const std::uint64_t h = bits(p);
    if (model_ == Model::Rademacher) return {(h >> 63) ? -1.0 : 1.0, 0.0};
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    const double angle = 2.0 * std::numbers::pi * u;
    return {std::cos(angle), std::sin(angle)};
  }

 private:
  Model model_;
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
};

template <class S>
concept PrimeValueSource = requires(const S& s, std::uint64_t p) {
  { s.at_prime(p) } -> std::convertible_to<Complex>;
  { s.model() } -> std::same_as<Model>;
};

/// Takes f(p) from `small` for p <= split and from `large` above it. Used to
/// hold the small-prime values fixed while resampling the large primes.
template <PrimeValueSource Small, PrimeValueSource Large>
class SplicedSampler {
 public:
  SplicedSampler(Small small, Large large, std::uint64_t split)
      : small_(std::move(small)), large_(std::move(large)), split_(split) {
    if (small_.model() != large_.model()) throw ConfigError("spliced samplers must share a model");
  }
  Model model() const noexcept { return small_.model(); }
  Complex at_prime(std::uint64_t p) const noexcept {
    return p <= split_ ? Complex(small_.at_prime(p)) : Complex(large_.at_prime(p));
  }

 private:
  Small small_;
  Large large_;
  std::uint64_t split_;
};

template <PrimeValueSource S>
Complex f_at_prime(const S& s, std::uint64_t p) {
  return s.at_prime(p);
}

/// f(n) for 1 <= n <= table.limit(): completely multiplicative (Steinhaus) or
/// supported on squarefree n (Rademacher).
template <PrimeValueSource S>
Complex f_at(const S& s, const PrimeTable& table, std::uint64_t n) {
  if (n == 0 || n > table.limit()) {
    throw RangeError("f_at: n = " + std::to_string(n) + " outside [1, " +
                     std::to_string(table.limit()) + "]");
  }
  Complex value{1.0, 0.0};
  while (n > 1) {
    const std::uint32_t p = table.lpf_unchecked(static_cast<std::uint32_t>(n));
    n /= p;
    if (s.model() == Model::Rademacher && n % p == 0) return {0.0, 0.0};
    value = detail::mul(value, s.at_prime(p));
  }
  return value;
}

/// f(0..limit) in one pass (f(0) = 0), querying each prime once.
template <PrimeValueSource S>
std::vector<Complex> multiplicative_values(const S& s, const PrimeTable& table,
                                           std::uint64_t limit) {
  if (limit > table.limit()) {
    throw RangeError("multiplicative_values: " + std::to_string(limit) +
                     " exceeds table limit " + std::to_string(table.limit()));
  }
  std::vector<Complex> fv(limit + 1, Complex{0.0, 0.0});
  if (limit == 0) return fv;
  fv[1] = {1.0, 0.0};
  const bool squarefree_only = s.model() == Model::Rademacher;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const std::uint32_t p = table.lpf_unchecked(static_cast<std::uint32_t>(n));
    const std::uint64_t m = n / p;
    if (m == 1) {
      fv[n] = s.at_prime(n);
    } else if (squarefree_only && m % p == 0) {
      fv[n] = {0.0, 0.0};
    } else {
      fv[n] = detail::mul(fv[p], fv[m]);
    }
  }
  return fv;
}

/// S(k) = sum_{m <= k} f(m) for k = 0..limit.
template <PrimeValueSource S>
std::vector<Complex> partial_sum_prefix(const S& s, const PrimeTable& table,
                                        std::uint64_t limit) {
  std::vector<Complex> prefix = multiplicative_values(s, table, limit);
  double re = 0.0;
  double im = 0.0;
  for (auto& v : prefix) {
    re += v.real();
    im += v.imag();
    v = {re, im};
  }
  return prefix;
}

std::uint64_t isqrt(std::uint64_t n) noexcept;

/// sum over primes sqrt(x) < p <= x of f(p) * prefix[floor(x/p)]. `prefix` must
/// cover indices up to floor(sqrt(x)).
template <PrimeValueSource S>
Complex restricted_sum_from_prefix(const S& s, const PrimeTable& table, std::uint64_t x,
                                   std::span<const Complex> prefix) {
  if (x > table.limit()) {
    throw RangeError("restricted sum: x = " + std::to_string(x) + " exceeds table limit " +
                     std::to_string(table.limit()));
  }
  const std::uint64_t root = isqrt(x);
  if (prefix.size() <= root) throw RangeError("restricted sum: prefix too short");
  double re = 0.0;
  double im = 0.0;
  for (const std::uint32_t p : table.primes_in(static_cast<double>(root), static_cast<double>(x))) {
    const Complex fp = s.at_prime(p);
    const Complex sk = prefix[x / p];
    re += fp.real() * sk.real() - fp.imag() * sk.imag();
    im += fp.real() * sk.imag() + fp.imag() * sk.real();
  }
  return {re, im};
}

/// sum_{n <= x, P(n) > sqrt(x)} f(n), evaluated through the factorization
/// sum_{sqrt(x) < p <= x} f(p) S(floor(x/p)).
template <PrimeValueSource S>
Complex restricted_sum(const S& s, const PrimeTable& table, std::uint64_t x) {
  if (x < 4) throw DomainError("restricted_sum requires x >= 4");
  if (x > table.limit()) {
    throw RangeError("restricted_sum: x = " + std::to_string(x) + " exceeds table limit " +
                     std::to_string(table.limit()));
  }
  const auto prefix = partial_sum_prefix(s, table, isqrt(x));
  return restricted_sum_from_prefix(s, table, x, prefix);
}

/// Direct definition: sum of f(n) over n <= x with P(n) > sqrt(x). O(x log x);
/// reference path for the factorized kernel.
template <PrimeValueSource S>
Complex restricted_sum_brute_force(const S& s, const PrimeTable& table, std::uint64_t x) {
  if (x > table.limit()) throw RangeError("restricted_sum_brute_force: x exceeds table limit");
  Complex acc{0.0, 0.0};
  for (std::uint64_t n = 2; n <= x; ++n) {
    const std::uint64_t p = table.lpf_unchecked(static_cast<std::uint32_t>(n));
    if (p * p > x) acc += f_at(s, table, n);
  }
  return acc;
}

/// (log log x)^{1/4} / sqrt(x). Throws DomainError unless log log x > 0.
double normalization(double x);

Complex normalize_sum(Complex v, double x);

}  // namespace rmf
