#include <cmath>
#include <random>
#include <stdexcept>

#include "bernstein/basis.hpp"
#include "bernstein/quadrature.hpp"
#include "bernstein/stats.hpp"
#include "doctest.h"

using namespace bernstein;

namespace {

// independent route: exact integer binomial times long-double powers
double basis_oracle(int m, int k, double x) {
  long double binom = 1.0L;
  for (int j = 0; j < k; ++j) {
    binom = binom * static_cast<long double>(m - j) / (j + 1);
  }
  return static_cast<double>(binom * std::pow(static_cast<long double>(x), k) *
                             std::pow(static_cast<long double>(1.0 - x), m - k));
}

} // namespace

TEST_SUITE("basis") {

TEST_CASE("pointwise examples") {
  CHECK(bernstein_basis(1, 0, 0.3) == doctest::Approx(0.7).epsilon(1e-13));
  CHECK(bernstein_basis(4, 2, 0.5) == doctest::Approx(0.375).epsilon(1e-13));
  CHECK(bernstein_basis(200, 100, 0.0) == 0.0);
  CHECK(bernstein_basis(200, 0, 0.0) == 1.0);
  CHECK(bernstein_basis(200, 200, 1.0) == 1.0);
  CHECK(bernstein_basis(0, 0, 0.42) == 1.0);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bernstein_basis(4, 5, 0.5), std::domain_error);
  CHECK_THROWS_AS(bernstein_basis(4, -1, 0.5), std::domain_error);
  CHECK_THROWS_AS(bernstein_basis(4, 2, 1.5), std::domain_error);
  CHECK_THROWS_AS(bernstein_basis(4, 2, -0.1), std::domain_error);
  CHECK_THROWS_AS(bernstein_row(3, 2.0), std::domain_error);
}

TEST_CASE("row examples and consistency") {
  const auto r1 = bernstein_row(1, 0.3);
  CHECK(r1[0] == doctest::Approx(0.7).epsilon(1e-13));
  CHECK(r1[1] == doctest::Approx(0.3).epsilon(1e-13));
  const auto r2 = bernstein_row(2, 0.5);
  CHECK(r2[0] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(r2[1] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(r2[2] == doctest::Approx(0.25).epsilon(1e-13));

  const auto row = bernstein_row(87, 0.613);
  for (int k = 0; k <= 87; ++k) {
    CHECK(row[static_cast<std::size_t>(k)] ==
          doctest::Approx(bernstein_basis(87, k, 0.613)).epsilon(1e-13));
  }
}

TEST_CASE("partition of unity over random orders") {
  std::mt19937_64 gen(20240811);
  for (int rep = 0; rep < 1000; ++rep) {
    const int m = 1 + static_cast<int>(gen() % 500);
    const double x = uniform01(gen);
    const auto row = bernstein_row(m, x);
    double sum = 0.0;
    for (double v : row) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("symmetry b_k(m,x) = b_{m-k}(m,1-x)") {
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 200; ++rep) {
    const int m = 1 + static_cast<int>(gen() % 300);
    const int k = static_cast<int>(gen() % static_cast<std::uint64_t>(m + 1));
    const double x = uniform01(gen);
    const double lhs = bernstein_basis(m, k, x);
    const double rhs = bernstein_basis(m, m - k, 1.0 - x);
    if (lhs > 1e-300) {
      CHECK(rhs == doctest::Approx(lhs).epsilon(1e-13));
    }
  }
}

TEST_CASE("basis integrates to 1/(m+1)") {
  const auto& rule = gauss_legendre(512);
  for (const auto [m, k] : {std::pair{7, 3}, {37, 5}, {120, 119}, {255, 0}}) {
    const double integral =
        rule.integrate([m = m, k = k](double x) { return bernstein_basis(m, k, x); });
    CHECK(integral == doctest::Approx(1.0 / (m + 1)).epsilon(1e-12));
  }
}

TEST_CASE("agrees with exact binomial oracle for m <= 30") {
  std::mt19937_64 gen(99);
  for (int m = 1; m <= 30; ++m) {
    for (int k = 0; k <= m; ++k) {
      const double x = uniform01(gen);
      const double expected = basis_oracle(m, k, x);
      if (expected > 1e-280) {
        CHECK(bernstein_basis(m, k, x) ==
              doctest::Approx(expected).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("empirical cdf") {
  const EmpiricalCdf single({0.3});
  CHECK(single(0.5) == 1.0);
  CHECK(single(0.3) == 1.0);
  CHECK(single(0.29) == 0.0);

  const EmpiricalCdf cdf({0.2, 0.4, 0.8});
  CHECK(cdf(0.4) == doctest::Approx(2.0 / 3.0));
  CHECK(cdf(0.1) == 0.0);
  CHECK(cdf(1.0) == 1.0);
  CHECK(cdf(0.4 - 1e-12) == doctest::Approx(1.0 / 3.0));  // right continuity

  const EmpiricalCdf ties({0.5, 0.5, 0.5, 0.9});
  CHECK(ties(0.5) == doctest::Approx(0.75));
  CHECK(ties(0.49) == 0.0);

  CHECK_THROWS_AS(EmpiricalCdf({}), std::invalid_argument);
}

} // TEST_SUITE
