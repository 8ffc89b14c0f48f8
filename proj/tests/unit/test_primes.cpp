#include <doctest.h>

#include <cmath>
#include <vector>

#include "../common/oracles.hpp"
#include "rmf/errors.hpp"
#include "rmf/primes.hpp"

using namespace rmf;

TEST_SUITE("primes") {

TEST_CASE("small tables") {
  const auto t30 = build_prime_table(30);
  const std::vector<std::uint32_t> expect{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  CHECK(std::vector<std::uint32_t>(t30.primes().begin(), t30.primes().end()) == expect);

  const auto t12 = build_prime_table(12);
  CHECK(t12.largest_prime_factor(12) == 3);
  CHECK(t12.largest_prime_factor(8) == 2);
  CHECK(t12.largest_prime_factor(11) == 11);

  const auto t2 = build_prime_table(2);
  REQUIRE(t2.primes().size() == 1);
  CHECK(t2.primes()[0] == 2);
  CHECK(t2.largest_prime_factor(2) == 2);
}

TEST_CASE("limit validation") {
  CHECK_THROWS_AS(PrimeTable(1), ConfigError);
  CHECK_THROWS_AS(PrimeTable(0), ConfigError);
  CHECK_THROWS_AS(PrimeTable(PrimeTable::kMaxLimit + 1), ConfigError);
}

TEST_CASE("largest prime factor") {
  const PrimeTable t(1000);
  CHECK(largest_prime_factor(t, 1) == 1);
  CHECK(largest_prime_factor(t, 12) == 3);
  CHECK(largest_prime_factor(t, 97) == 97);
  CHECK_THROWS_AS(largest_prime_factor(t, 0), RangeError);
  CHECK_THROWS_AS(largest_prime_factor(t, 1001), RangeError);
}

TEST_CASE("table agrees with trial division") {
  const std::uint64_t N = 20000;
  const PrimeTable t(N);
  for (std::uint64_t n = 2; n <= N; ++n) {
    const auto P = t.largest_prime_factor(n);
    REQUIRE(t.is_prime(n) == oracle::is_prime(n));
    REQUIRE(P == oracle::largest_prime_factor(n));
    REQUIRE(n % P == 0);
    // n / P(n) has no prime factor above P(n)
    REQUIRE(oracle::largest_prime_factor(n / P) <= P);
  }
  CHECK_FALSE(t.is_prime(0));
  CHECK_FALSE(t.is_prime(1));
}

TEST_CASE("prime ranges and counts") {
  const PrimeTable t(100);
  CHECK(t.prime_count(100) == 25);
  CHECK(t.prime_count(1.5) == 0);
  CHECK(t.prime_count(2) == 1);
  const auto r = t.primes_in(10, 20);  // 10 < p <= 20
  CHECK(std::vector<std::uint32_t>(r.begin(), r.end()) == std::vector<std::uint32_t>{11, 13, 17, 19});
  CHECK(t.primes_in(3, 3).empty());
  CHECK(t.primes_in(2.5, 3.0).size() == 1);
}

TEST_CASE("mertens sum") {
  const PrimeTable t(1000000);
  CHECK(mertens_sum(t, 10) == doctest::Approx(1.0 / 2 + 1.0 / 3 + 1.0 / 5 + 1.0 / 7).epsilon(1e-15));
  CHECK(mertens_sum(t, 10) == doctest::Approx(1.176190476).epsilon(1e-9));
  CHECK(mertens_sum(t, 2) == 0.5);
  const double mertens_constant = 0.2614972128476428;
  CHECK(std::abs(mertens_sum(t, 100) - (oracle::loglog(100) + mertens_constant)) < 0.05);
  // constant cross-check by summation to 10^6
  CHECK(std::abs(mertens_sum(t, 1e6) - oracle::loglog(1e6) - mertens_constant) < 2e-3);

  double prev = 0.0;
  for (double x = 2; x <= 5000; x += 7) {
    const double s = mertens_sum(t, x);
    REQUIRE(s >= prev);
    prev = s;
  }
  CHECK_THROWS_AS(mertens_sum(t, 2e6), RangeError);
}

TEST_CASE("rough and smooth count examples") {
  const PrimeTable t(1000);
  CHECK(rough_count(t, {10, 2}) == 5);
  CHECK(rough_count(t, {30, 5}) == 8);
  CHECK(rough_count(t, {5, 5}) == 1);
  CHECK(smooth_count(t, {10, 3}) == 7);
  CHECK(smooth_count(t, {10, 10}) == 10);
  CHECK(smooth_count(t, {100, 2}) == 7);
  CHECK_THROWS_AS(rough_count(t, {1001, 2}), RangeError);
  CHECK_THROWS_AS(smooth_count(t, {1001, 2}), RangeError);
}

TEST_CASE("rough and smooth counts against enumeration, x <= 1000") {
  const PrimeTable t(1000);
  std::vector<std::vector<std::uint64_t>> fac(1001);
  for (std::uint64_t n = 1; n <= 1000; ++n) fac[n] = n == 1 ? std::vector<std::uint64_t>{} : oracle::factorize(n);
  for (std::uint64_t x = 1; x <= 1000; x += (x < 100 ? 1 : 37)) {
    for (std::uint64_t y = 1; y <= x; y += (y < 50 ? 1 : 13)) {
      std::uint64_t rough = 0;
      std::uint64_t smooth = 0;
      for (std::uint64_t n = 1; n <= x; ++n) {
        bool some_small = false;
        bool all_small = true;
        for (const auto p : fac[n]) {
          if (p <= y) some_small = true;
          if (p > y) all_small = false;
        }
        if (!some_small) ++rough;
        if (all_small) ++smooth;
      }
      const RoughSmoothQuery q{double(x), double(y)};
      REQUIRE(rough_count(t, q) == rough);
      REQUIRE(smooth_count(t, q) == smooth);
    }
    CHECK(rough_count(t, {double(x), 1.0}) == x);
    CHECK(smooth_count(t, {double(x), double(x)}) == x);
  }
}

TEST_CASE("rough prefix counts") {
  const PrimeTable t(5000);
  const auto counts = rough_prefix_counts(t, 5000, 7.5);
  CHECK(counts[0] == 0);
  for (std::uint64_t m = 1; m <= 5000; m += 11) {
    REQUIRE(counts[m] == rough_count(t, {double(m), 7.5}));
  }
  // B = 2: the odd numbers
  const auto odd = rough_prefix_counts(t, 5000, 2.0);
  for (std::uint64_t m = 1; m <= 5000; ++m) REQUIRE(odd[m] == (m + 1) / 2);
}

TEST_CASE("prime sum oscillation") {
  const PrimeTable t(1000000);
  CHECK(prime_sum_oscillation(t, 500, 500, 3.0) == std::complex<double>(0.0, 0.0));

  const auto s0 = prime_sum_oscillation(t, 100, 1e4, 0.0);
  CHECK(s0.imag() == 0.0);
  CHECK(s0.real() > 0.0);
  CHECK(s0.real() == doctest::Approx(mertens_sum(t, 1e4) - mertens_sum(t, 100)).epsilon(1e-12));

  // direct summation oracle
  std::complex<double> direct{0.0, 0.0};
  for (const auto p : oracle::primes_upto(1000000)) {
    if (p > 100) direct += std::pow(double(p), std::complex<double>(-1.0, -5.0));
  }
  const auto s5 = prime_sum_oscillation(t, 100, 1e6, 5.0);
  CHECK(std::abs(s5 - direct) < 1e-12);
  // bound shape 3 / (|t| log x), with slack
  CHECK(std::abs(s5) <= 3.0 / (5.0 * std::log(100.0)) + 0.05);

  CHECK_THROWS_AS(prime_sum_oscillation(t, 200, 100, 1.0), DomainError);
  CHECK_THROWS_AS(prime_sum_oscillation(t, 100, 2e6, 1.0), RangeError);
}

}
