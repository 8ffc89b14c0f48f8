#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "rmf/primes.hpp"
#include "rmf/quadrature.hpp"
#include "rmf/sampler.hpp"

namespace rmf {

inline constexpr double kEulerGamma = 0.5772156649015329;

/// C = e^{-gamma} log 2 / (2 pi).
double variance_constant() noexcept;

/// Truncation level j at scale x: the product runs over p <= sqrt(x)^{e^{-j}}.
struct EulerCutoffs {
  std::uint64_t x = 0;
  int j = 0;

  double cutoff() const {
    return std::pow(std::sqrt(static_cast<double>(x)), std::exp(-static_cast<double>(j)));
  }
};

/// log|F| and arg F, with the phase reduced to (-pi, pi].
struct EulerProductValue {
  double log_mag = 0.0;
  double phase = 0.0;

  Complex value() const { return std::polar(std::exp(log_mag), phase); }
};

/// One prime's contribution: a = f(p) / sqrt(p) and log p.
struct EulerFactor {
  double log_p;
  double a_re;
  double a_im;
};

template <PrimeValueSource S>
std::vector<EulerFactor> euler_factors(const S& s, std::span<const std::uint32_t> primes) {
  std::vector<EulerFactor> out;
  out.reserve(primes.size());
  for (const std::uint32_t p : primes) {
    const Complex fp = s.at_prime(p);
    const double w = 1.0 / std::sqrt(static_cast<double>(p));
    out.push_back({std::log(static_cast<double>(p)), fp.real() * w, fp.imag() * w});
  }
  return out;
}

/// log F(1/2 + it) from precomputed factors, one principal logarithm per factor.
EulerProductValue log_euler_product(Model model, std::span<const EulerFactor> factors, double t);

/// log |F(1/2 + it)|^2; cheaper than log_euler_product since no phase is kept.
double log_abs2_euler_product(Model model, std::span<const EulerFactor> factors, double t);

/// Euler product over primes lo < p <= hi at s = 1/2 + it.
template <PrimeValueSource S>
EulerProductValue euler_product_range(const S& s, const PrimeTable& table, double lo, double hi,
                                      double t) {
  if (hi > static_cast<double>(table.limit())) {
    throw RangeError("euler product cutoff " + std::to_string(hi) + " exceeds table limit " +
                     std::to_string(table.limit()));
  }
  const auto factors = euler_factors(s, table.primes_in(lo, hi));
  return log_euler_product(s.model(), factors, t);
}

template <PrimeValueSource S>
EulerProductValue euler_product(const S& s, const PrimeTable& table, double cutoff, double t) {
  if (cutoff < 2.0) return {};
  return euler_product_range(s, table, 0.0, cutoff, t);
}

template <PrimeValueSource S>
EulerProductValue euler_product(const S& s, const PrimeTable& table, const EulerCutoffs& c,
                                double t) {
  return euler_product(s, table, c.cutoff(), t);
}

/// E|F(1/2+it)|^2 over p <= cutoff: prod (1 - 1/p)^{-1} (Steinhaus) or
/// prod (1 + 1/p) (Rademacher). Independent of t.
double mean_square_exact(const PrimeTable& table, Model model, double cutoff);

/// E I(t1) conj(I(t2)) for I the Euler product over lo < p <= hi.
Complex pair_expectation_exact(const PrimeTable& table, Model model, double lo, double hi,
                               double t1, double t2);

/// Truncation level used for V5 when none is given: floor(100 log log log x),
/// clamped so that the cutoff stays >= x^{1/10}.
int default_truncation_j(std::uint64_t x);

/// Default half-width: max(10, (log log x)^4), capped at 1000.
double default_quad_T(std::uint64_t x);

struct V5Result {
  double value = 0.0;            // C (log log B)^{1/2} / log B * Q
  double value_loglog_x = 0.0;   // same with (log log x)^{1/2} in place of (log log B)^{1/2}
  double q_integral = 0.0;       // Q = int_{-T}^{T} |F|^2 / |1/2+it|^2 dt
  double tail_bound = 0.0;       // expected |t| > T mass, in units of `value`
  std::size_t panels_used = 0;
  bool converged = true;
  int j = 0;
  double B = 0.0;
  double T = 0.0;
};

/// Resolves the truncation level (negative = default) and lowers it until the
/// cutoff is at least 11; throws DomainError if log log B <= 0 even at j = 0.
int effective_truncation_j(std::uint64_t x, int requested_j);

V5Result v5_from_factors(Model model, std::span<const EulerFactor> factors, std::uint64_t x,
                         int j, const PrimeTable& table, const QuadratureSpec& quad);

template <PrimeValueSource S>
V5Result v5_integral(const S& s, const PrimeTable& table, std::uint64_t x,
                     const QuadratureSpec& quad, int truncation_j = -1) {
  if (x < 16) throw DomainError("v5_integral requires x >= 16");
  const int j = effective_truncation_j(x, truncation_j);
  const double B = EulerCutoffs{x, j}.cutoff();
  if (B > static_cast<double>(table.limit())) {
    throw RangeError("v5_integral: cutoff exceeds table limit");
  }
  const auto factors = euler_factors(s, table.primes_in(0.0, B));
  return v5_from_factors(s.model(), factors, x, j, table, quad);
}

/// (log log x)^{1/2} / x * sum_{sqrt(x) < p <= x} |prefix[floor(x/p)]|^2.
double v1_from_prefix(const PrimeTable& table, std::uint64_t x, std::span<const Complex> prefix);

template <PrimeValueSource S>
double v1_variance(const S& s, const PrimeTable& table, std::uint64_t x) {
  if (x < 16) throw DomainError("v1_variance requires x >= 16");
  if (x > table.limit()) throw RangeError("v1_variance: x exceeds table limit");
  const auto prefix = partial_sum_prefix(s, table, isqrt(x));
  return v1_from_prefix(table, x, prefix);
}

/// E V1 from orthogonality: E|S(k)|^2 = k (Steinhaus) or the number of
/// squarefree m <= k (Rademacher).
double v1_expectation(const PrimeTable& table, Model model, std::uint64_t x);

}  // namespace rmf
