#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "unruhqi/errors.hpp"
#include "unruhqi/fock_ledger.hpp"

using namespace unruhqi;

namespace {

// Independent summation oracle: explicit long-double series, no closed form.
long double brute_weight(std::size_t n, double omega) {
  const long double x = std::exp(-2.0L * std::numbers::pi_v<long double> * omega);
  return (1.0L - x) * (1.0L - x) * std::pow(x, static_cast<long double>(n)) * (n + 1.0L);
}

long double brute_tail(std::size_t cutoff, double omega) {
  long double acc = 0.0L;
  for (std::size_t n = cutoff + 1; n < 20000; ++n) {
    const long double w = brute_weight(n, omega);
    acc += w;
    if (w < 1e-30L && n > cutoff + 10) break;
  }
  return acc;
}

}  // namespace

TEST_CASE("fock_weight at the inertial limit and a frozen value") {
  CHECK(fock_weight(0, AccelerationParam(50.0)) == doctest::Approx(1.0).epsilon(1e-12));
  // (1 - e^{-pi})^2 evaluated with mpmath at 30 digits.
  CHECK(std::abs(fock_weight(0, AccelerationParam(0.5)) - 0.915439606204163) < 1e-6);
  CHECK(fock_weight(3, AccelerationParam(0.5)) > 0.0);
}

TEST_CASE("fock weights sum to one") {
  for (double omega : {0.05, 0.2, 1.0}) {
    double total = 0.0;
    for (std::size_t n = 0; n < 5000; ++n) total += fock_weight(n, AccelerationParam(omega));
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("closed-form tail matches brute-force summation") {
  double worst = 0.0;
  for (double omega : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
    for (std::size_t n = 0; n <= 50; ++n) {
      const double diff = std::abs(fock_tail(n, AccelerationParam(omega)) -
                                   static_cast<double>(brute_tail(n, omega)));
      worst = std::max(worst, diff);
    }
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("weight_series picks the smallest certified cutoff") {
  SUBCASE("any tail is below epsilon = 1") {
    const auto s = weight_series(AccelerationParam(0.5), {1.0 - 1e-15, 512});
    CHECK(s.cutoff == 0);
  }
  SUBCASE("matches the partial-sum oracle") {
    std::size_t expected = 0;
    long double partial = 0.0L;
    for (std::size_t n = 0;; ++n) {
      partial += brute_weight(n, 0.5);
      if (1.0L - partial <= 1e-12L) {
        expected = n;
        break;
      }
    }
    const auto s = weight_series(AccelerationParam(0.5), {1e-12, 512});
    CHECK(s.cutoff == expected);
    CHECK(s.tail_bound <= 1e-12);
    CHECK(s.weights.size() == s.cutoff + 1);
    CHECK(s.captured_mass() + s.tail_bound == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("hard cap too small") {
    const AccelerationParam omega(0.05);
    try {
      (void)weight_series(omega, {1e-12, 10});
      FAIL("expected a truncation error");
    } catch (const TruncationError& e) {
      CHECK(e.achievable_tail() == doctest::Approx(fock_tail(10, omega)));
      CHECK(e.achievable_tail() > 1e-12);
    }
  }
}

TEST_CASE("partial sums are monotone and bounded") {
  for (double omega : {0.05, 0.3, 2.0}) {
    const auto s = weight_series(AccelerationParam(omega));
    double running = 0.0;
    for (double w : s.weights) {
      CHECK(w > 0.0);
      const double next = running + w;
      CHECK(next >= running);
      running = next;
    }
    CHECK(running <= 1.0 + 1e-15);
    CHECK(running + s.tail_bound >= 1.0 - 1e-15);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(AccelerationParam(0.0), DomainError);
  CHECK_THROWS_AS(AccelerationParam(-1.0), DomainError);
  CHECK_THROWS_AS(AccelerationParam{std::numeric_limits<double>::quiet_NaN()}, DomainError);
  CHECK_THROWS_AS(AccelerationParam{std::numeric_limits<double>::infinity()}, DomainError);
  CHECK_THROWS_AS(weight_series(AccelerationParam(1.0), {0.0, 10}), DomainError);
  CHECK_THROWS_AS(weight_series(AccelerationParam(1.0), {1e-3, 0}), DomainError);
}

TEST_CASE("loosest admissible epsilon keeps only the ground level") {
  const TruncationPolicy loose{std::nextafter(1.0, 0.0), 512};
  CHECK(weight_series(AccelerationParam(0.5), loose).cutoff == 0);
  CHECK_THROWS_AS(weight_series(AccelerationParam(0.5), {1.0, 512}), DomainError);
}
