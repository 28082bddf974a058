#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "bernstein/asymptotics.hpp"
#include "bernstein/schedules.hpp"
#include "bernstein/stats.hpp"
#include "doctest.h"

using namespace bernstein;

TEST_SUITE("schedules") {

TEST_CASE("stepsize examples and presets") {
  CHECK(StepsizeSchedule(1.0, 1.0).at(4) == doctest::Approx(0.25));
  CHECK(StepsizeSchedule::preset("r2").at(1) == doctest::Approx(8.0 / 9.0));
  CHECK(StepsizeSchedule::preset("r3").at(10) == doctest::Approx(0.08));
  CHECK(StepsizeSchedule::preset("r1").at(1) == 1.0);  // clamped at 1
  CHECK_THROWS_AS(StepsizeSchedule(1.0, 1.0).at(0), std::domain_error);
  CHECK_THROWS_AS(StepsizeSchedule(1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(StepsizeSchedule(1.0, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(StepsizeSchedule::preset("r4"), std::invalid_argument);
}

TEST_CASE("xi") {
  CHECK(StepsizeSchedule(0.8, 1.0).xi() == doctest::Approx(1.25));
  CHECK(StepsizeSchedule(0.8, 0.9).xi() == 0.0);
}

TEST_CASE("stepsize strictly decreasing") {
  const StepsizeSchedule s(0.9, 0.75);
  for (std::size_t n = 1; n < 200; ++n) CHECK(s.at(n + 1) < s.at(n));
}

TEST_CASE("order schedule examples") {
  CHECK(OrderSchedule(2.0, 2.0 / 9.0).at(1) == 2);
  CHECK(OrderSchedule(1.0, 0.987).at(107) == 100);  // 107^0.987 = 100.7
  CHECK(OrderSchedule(4.0, 2.0 / 9.0).at(500) == 16);  // 15.92 -> 16
  CHECK(OrderSchedule(0.0, 0.5).at(1000) == 2);        // clamped floor
  CHECK_THROWS_AS(OrderSchedule(2.0, 0.5).at(0), std::domain_error);
  CHECK_THROWS_AS(OrderSchedule(-1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(OrderSchedule(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("orders are even and nondecreasing (random property)") {
  std::mt19937_64 gen(314);
  for (int rep = 0; rep < 300; ++rep) {
    const double c = 30.0 * uniform01(gen);
    const double a = 0.01 + 0.97 * uniform01(gen);
    const OrderSchedule o(c, a);
    const std::size_t n = 1 + gen() % 100000;
    const int m = o.at(n);
    CHECK(m >= 2);
    CHECK(m % 2 == 0);
    CHECK(o.at(n + 1 + gen() % 1000) >= m);
  }
}

TEST_CASE("pi product recursion and zero-step") {
  PiProduct pi;
  CHECK(pi.value() == 1.0);
  pi.update(1.0);
  CHECK(pi.value() == 0.0);
  pi.update(0.5);
  CHECK(pi.value() == 0.0);
  CHECK(pi.count() == 2);
  CHECK_THROWS_AS(pi.update(1.5), std::domain_error);
}

TEST_CASE("pi product matches the gamma-function closed form") {
  // prod_{j<=n} (1 - g0/j) = Gamma(n+1-g0) / (Gamma(n+1) Gamma(1-g0))
  for (double g0 : {0.3, 0.7, 0.99}) {
    PiProduct pi;
    const StepsizeSchedule s(g0, 1.0);
    for (std::size_t n = 1; n <= 10000; ++n) {
      pi.update(s.at(n));
      if (n % 1000 == 0 || n == 1) {
        const double nn = static_cast<double>(n);
        const double expected = std::exp(std::lgamma(nn + 1.0 - g0) -
                                         std::lgamma(nn + 1.0) -
                                         std::lgamma(1.0 - g0));
        CHECK(pi.value() == doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("gs exponent estimate") {
  auto build = [](auto fn, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = fn(static_cast<double>(i + 1));
    return v;
  };
  const auto sq = build([](double n) { return n * n; }, 1000);
  CHECK(std::abs(gs_exponent_estimate(sq) - 2.0) <= 0.01);
  const auto inv = build([](double n) { return 1.0 / n; }, 1000);
  CHECK(std::abs(gs_exponent_estimate(inv) + 1.0) <= 0.01);
  // slowly varying log factor: at N = 10^4 the estimate sits at
  // 2/9 + 1/log(N) + o(1) = 0.33..., far from its limit 2/9
  // (terms from n = 2: log vanishes at n = 1)
  const auto slow = build(
      [](double n) { return std::pow(n + 1.0, 2.0 / 9.0) * std::log(n + 1.0); },
      10000);
  CHECK(gs_exponent_estimate(slow) ==
        doctest::Approx(0.330773244).epsilon(1e-3));

  CHECK_THROWS_AS(gs_exponent_estimate(std::vector<double>{1, 2, 3}),
                  std::domain_error);
  const std::vector<double> bad{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, -1, 12};
  CHECK_THROWS_AS(gs_exponent_estimate(bad), std::domain_error);
}

TEST_CASE("stepsize limit diagnostic reports both thresholds") {
  const StepsizeSchedule r1 = StepsizeSchedule::preset("r1");
  const OrderSchedule interior(2.0, 2.0 / 9.0);
  const auto d1 = check_stepsize_limit(r1, interior);
  CHECK(d1.limit_n_gamma == doctest::Approx(1.0));
  CHECK(d1.threshold_main == doctest::Approx(4.0 / 9.0));
  CHECK(d1.threshold_variant == doctest::Approx(2.0 / 9.0));
  CHECK(d1.ok_main);
  CHECK(d1.ok_variant);

  // a configuration the two thresholds disagree about
  const StepsizeSchedule weak(0.3, 1.0);
  const OrderSchedule o(2.0, 0.25);
  const auto d2 = check_stepsize_limit(weak, o);
  CHECK_FALSE(d2.ok_main);     // 0.3 < min(0.5, 0.4375)
  CHECK(d2.ok_variant);        // 0.3 > min(0.25, 0.5625)

  const StepsizeSchedule sub(0.9, 0.8);
  CHECK(check_stepsize_limit(sub, o).limit_n_gamma ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("optimal order constant") {
  // bracket [32 c2/(c1 c3)] = 1: constant reduces to 2^(2/9) (g0-4/9)^(-2/9)
  TheoryConstants tc{};
  tc.c1 = 1.0;
  tc.c3 = 1.4411204574756434;
  tc.c2 = tc.c1 * tc.c3 / 32.0;

  CHECK(optimal_order_constant(tc, StepsizeSchedule(1.0, 1.0)) ==
        doctest::Approx(1.3292993058).epsilon(1e-9));
  CHECK(optimal_order_constant(tc, StepsizeSchedule(8.0 / 9.0, 1.0)) ==
        doctest::Approx(1.39687754607).epsilon(1e-9));

  TheoryConstants flat = tc;
  flat.c2 = 0.0;
  CHECK(optimal_order_constant(flat, StepsizeSchedule(1.0, 1.0)) == 0.0);
  const OrderSchedule clamped(0.0, 2.0 / 9.0);
  CHECK(clamped.at(1) == 2);
  CHECK(clamped.at(100000) == 2);

  CHECK_THROWS_AS(optimal_order_constant(tc, StepsizeSchedule(4.0 / 9.0, 1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(optimal_order_constant(tc, StepsizeSchedule(0.9, 0.9)),
                  std::domain_error);
}

} // TEST_SUITE
