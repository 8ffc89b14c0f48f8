#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "../common/oracles.hpp"
#include "rmf/errors.hpp"
#include "rmf/euler.hpp"
#include "rmf/verify.hpp"

using namespace rmf;

TEST_SUITE("verify") {

TEST_CASE("rough integral, B = sqrt(x)") {
  const std::uint64_t x = 1000000;
  const PrimeTable table(x);
  const auto rep = rough_integral_three_ways(table, x, 1000.0, 0.0, {});
  // Phi(m, 1000) with m < 1000 counts only n = 1, so the rough form is 2 pi / x times the
  // number of primes in (1000, 10^6]
  const double primes = double(oracle::primes_upto(x).size() - oracle::primes_upto(1000).size());
  CHECK(rep.mid_rough_count == doctest::Approx(2 * std::numbers::pi * primes / double(x)));
  CHECK(rep.rhs_asymptotic ==
        doctest::Approx(2 * std::numbers::pi * std::exp(-kEulerGamma) * std::log(2.0) /
                        std::log(1000.0)));
  CHECK(rep.W == doctest::Approx(std::max(4.0, std::pow(oracle::loglog(1e6), 2))));
  CHECK(rep.converged);
  // the integrand at -u is the conjugate of the integrand at u
  CHECK(std::abs(rep.lhs_numeric.imag()) < 1e-9 * rep.lhs_numeric.real());
  // within the tolerance max(0.05, 3 / log log x)
  CHECK(std::abs(rep.lhs_numeric.real() - rep.mid_rough_count) / rep.mid_rough_count <=
        std::max(0.05, 3.0 / oracle::loglog(1e6)));
}

TEST_CASE("rough integral, B = 2 and x^{1/4}") {
  const std::uint64_t x = 100000;
  const PrimeTable table(x);
  const auto two = rough_integral_three_ways(table, x, 2.0, 0.0, {});
  // Phi(m, 2) counts odd numbers up to m
  double sum = 0.0;
  for (const auto p : oracle::primes_upto(x)) {
    if (p * p > x) sum += double((x / p + 1) / 2);
  }
  CHECK(two.mid_rough_count == doctest::Approx(2 * std::numbers::pi * sum / double(x)));

  const double B = std::sqrt(std::sqrt(double(x)));
  const auto q = rough_integral_three_ways(table, x, B, 0.0, {});
  CHECK(q.mid_rough_count > 0.0);
  CHECK(q.rhs_asymptotic > 0.0);
  CHECK(std::abs(q.lhs_numeric.real() - q.mid_rough_count) / q.mid_rough_count <=
        std::max(0.05, 3.0 / oracle::loglog(double(x))));
  CHECK(std::abs(q.mid_rough_count - q.rhs_asymptotic) / q.rhs_asymptotic <=
        std::max(0.20, 5.0 / oracle::loglog(double(x))));

  CHECK_THROWS_AS(rough_integral_three_ways(table, x, 400.0, 0.0, {}), DomainError);
  CHECK_THROWS_AS(rough_integral_three_ways(table, x, 1.5, 0.0, {}), DomainError);
  CHECK_THROWS_AS(rough_integral_three_ways(table, 2 * x, 10.0, 0.0, {}), RangeError);
}

TEST_CASE("Perron weight: the weighted integral tends to the rough count") {
  const std::uint64_t x = 200000;
  const PrimeTable table(x);
  const double B = 21.0;
  const auto rep = rough_integral_three_ways(table, x, B, 0.0, {});
  double prev_err = 1e9;
  for (const double U : {5.0, 20.0, 80.0}) {
    const auto w = rough_perron_integral(table, x, B, U, true, {});
    const double err = std::abs(w.value.real() - rep.mid_rough_count);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err / rep.mid_rough_count < 0.01);
}

TEST_CASE("rough integral is thread-count independent") {
  const std::uint64_t x = 200000;
  const PrimeTable table(x);
  const auto a = rough_integral_three_ways(table, x, 20.0, 0.0, {}, 1);
  const auto b = rough_integral_three_ways(table, x, 20.0, 0.0, {}, 4);
  CHECK(a.lhs_numeric == b.lhs_numeric);
}

TEST_CASE("conditional Gaussianity") {
  const std::uint64_t x = 10000;
  const PrimeTable table(x);
  const auto rep = conditional_gaussianity(table, x, 3, 2000);
  REQUIRE(rep.ks_imag.has_value());
  CHECK(rep.ks_real >= 0.0);
  CHECK(rep.ks_real <= 1.0);
  CHECK(std::abs(*rep.corr_re_im) <= 4.0 / std::sqrt(2000.0));
  CHECK(rep.variance_used == doctest::Approx(v1_variance(RmfSampler(Model::Steinhaus, 3), table, x)));

  // resamples reuse the small primes: sample i is the restricted sum of the
  // spliced sampler (stream 0 below sqrt(x), stream i + 1 above)
  const auto samples = conditional_standardized_samples(table, x, 3, 5, Model::Steinhaus, 1);
  const double scale = normalization(double(x)) / std::sqrt(rep.variance_used / 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SplicedSampler sp(RmfSampler(Model::Steinhaus, 3, 0),
                            RmfSampler(Model::Steinhaus, 3, i + 1), isqrt(x));
    const Complex direct = restricted_sum_brute_force(sp, table, x) * scale;
    CHECK(std::abs(samples[i] - direct) < 1e-9);
  }

  const auto rad = conditional_gaussianity(table, x, 3, 1000, Model::Rademacher);
  CHECK_FALSE(rad.ks_imag.has_value());
  CHECK_FALSE(rad.corr_re_im.has_value());
  for (const auto& z : conditional_standardized_samples(table, x, 3, 50, Model::Rademacher, 1)) {
    REQUIRE(z.imag() == 0.0);
  }
  CHECK_THROWS_AS(conditional_gaussianity(table, x, 3, 999), ConfigError);
}

TEST_CASE("concentration experiment") {
  const std::uint64_t x = 100000;
  const PrimeTable table(x);
  const auto a = concentration_experiment(table, x, 50, {});
  const auto b = concentration_experiment(table, x, 50, {}, Model::Steinhaus, -1, 1, 3);
  CHECK(a.pairs == b.pairs);
  CHECK(a.correlation == b.correlation);
  CHECK(a.correlation >= -1.0);
  CHECK(a.correlation <= 1.0);
  for (const auto& [v1, v5] : a.pairs) {
    CHECK(v1 >= 0.0);
    CHECK(v5 >= 0.0);
  }
  // scaling V5 leaves the correlation unchanged
  ConcentrationReport scaled = a;
  for (auto& p : scaled.pairs) p.second *= 3.5;
  summarize_pairs(scaled);
  CHECK(scaled.correlation == doctest::Approx(a.correlation).epsilon(1e-12));
  CHECK(scaled.median_ratio == doctest::Approx(a.median_ratio / 3.5));
  CHECK_THROWS_AS(concentration_experiment(table, x, 49, {}), ConfigError);
}

TEST_CASE("pearson correlation") {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{2, 4, 6, 8, 10};
  const std::vector<double> c{5, 4, 3, 2, 1};
  CHECK(pearson_correlation(a, b) == doctest::Approx(1.0));
  CHECK(pearson_correlation(a, c) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(pearson_correlation(a, std::vector<double>{1.0}), DomainError);
}

}
