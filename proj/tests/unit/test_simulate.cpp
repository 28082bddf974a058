#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bernstein/basis.hpp"
#include "bernstein/quadrature.hpp"
#include "bernstein/simulate.hpp"
#include "bernstein/stats.hpp"
#include "doctest.h"

using namespace bernstein;

TEST_SUITE("simulate") {

TEST_CASE("estimator spec parsing and labels") {
  CHECK(EstimatorSpec::parse("vitale").kind == EstimatorKind::vitale);
  CHECK(EstimatorSpec::parse("recursive:r2").gamma0 ==
        doctest::Approx(8.0 / 9.0));
  CHECK(EstimatorSpec::parse("recursive:0.75").gamma0 == doctest::Approx(0.75));
  CHECK(EstimatorSpec::parse("generalized:4").b == 4);
  CHECK(EstimatorSpec::parse("normalized:3").kind ==
        EstimatorKind::normalized);
  CHECK(EstimatorSpec::parse("recursive:r1").label() == "recursive:r1");
  CHECK(EstimatorSpec::parse("multiplicative:2").label() == "multiplicative:2");
  CHECK_THROWS_AS(EstimatorSpec::parse("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(EstimatorSpec::parse("generalized:1"),
                  std::invalid_argument);
}

TEST_CASE("zoo samplers: support, mean, determinism") {
  for (ZooId id : all_zoo_ids()) {
    const auto sample = zoo_density(id).sample(2000, 7);
    for (double v : sample) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(zoo_density(id).sample(2000, 7) == sample);  // bitwise identical
  }
  // Beta(3,5) mean is 3/8; 3 sigma of the mean at this sample size
  const auto big = zoo_density(ZooId::a).sample(100000, 42);
  const double mean =
      std::accumulate(big.begin(), big.end(), 0.0) / big.size();
  const double sd = std::sqrt(15.0 / (64.0 * 9.0));
  CHECK(std::abs(mean - 0.375) <= 3.0 * sd / std::sqrt(100000.0));
}

TEST_CASE("zoo samplers match their CDFs (Kolmogorov-Smirnov)") {
  const std::size_t big_n = 100000;
  const double bound = 1.63 / std::sqrt(static_cast<double>(big_n));
  for (ZooId id : all_zoo_ids()) {
    const ZooDensity& zd = zoo_density(id);
    const auto sample = zd.sample(big_n, 2025);
    const double d =
        ks_statistic(sample, [&zd](double t) { return zd.cdf(t); });
    INFO("density " << zoo_label(id));
    CHECK(d < bound);
  }
}

TEST_CASE("zoo pdf integrates to one and matches the cdf derivative") {
  const auto& rule = gauss_legendre(512);
  for (ZooId id : all_zoo_ids()) {
    const ZooDensity& zd = zoo_density(id);
    CHECK(rule.integrate([&zd](double x) { return zd.pdf(x); }) ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(zd.cdf(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(zd.cdf(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    // central difference of the cdf at a few interior points
    for (double x : {0.21, 0.5, 0.83}) {
      const double h = 1e-5;
      const double fd = (zd.cdf(x + h) - zd.cdf(x - h)) / (2.0 * h);
      CHECK(fd == doctest::Approx(zd.pdf(x)).epsilon(1e-5));
    }
  }
}

TEST_CASE("ise examples") {
  const ZooDensity& a = zoo_density(ZooId::a);
  CHECK(ise([&a](double x) { return a.pdf(x); }, a) <= 1e-12);
  // flat estimate against Beta(3,5): exact value 102/143
  CHECK(ise([](double) { return 1.0; }, a) ==
        doctest::Approx(102.0 / 143.0).epsilon(1e-10));
  // zero estimate against the uniform density: integral of 1
  const auto& rule = gauss_legendre(512);
  const double zero_vs_uniform = rule.integrate([](double) { return 1.0; });
  CHECK(zero_vs_uniform == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("run_table: determinism and thread invariance") {
  TableConfig cfg;
  cfg.densities = {ZooId::a};
  cfg.estimators = {EstimatorSpec::parse("vitale"),
                    EstimatorSpec::parse("recursive:r1")};
  cfg.n_values = {50};
  cfg.trials = 6;
  cfg.seed = 42;
  cfg.threads = 1;
  const auto seq = run_table(cfg);
  cfg.threads = 4;
  const auto par = run_table(cfg);
  REQUIRE(seq.size() == par.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].ise_values == par[i].ise_values);  // bitwise equal
    CHECK(seq[i].averaged_ise == par[i].averaged_ise);
  }
  // a different seed changes the trials
  cfg.seed = 43;
  CHECK(run_table(cfg)[0].ise_values != seq[0].ise_values);
  for (const auto& rep : seq) {
    for (double v : rep.ise_values) CHECK(v >= 0.0);
    CHECK(rep.averaged_ise > 0.0);
  }
}

TEST_CASE("run_table validates its configuration") {
  TableConfig cfg;
  CHECK_THROWS_AS(run_table(cfg), std::invalid_argument);
  cfg.densities = {ZooId::a};
  cfg.estimators = {EstimatorSpec::parse("vitale")};
  cfg.n_values = {50};
  cfg.trials = 0;
  CHECK_THROWS_AS(run_table(cfg), std::invalid_argument);
}

TEST_CASE("monte carlo agrees with the exact finite-sample risk") {
  // independent oracle: with W ~ multinomial bin weights, the single-order
  // estimate is a linear function of W, so its MISE is exactly
  //   int (E fhat - f)^2 + (m^2/n) int [ sum p_k b_k^2 - (sum p_k b_k)^2 ].
  const ZooDensity& zd = zoo_density(ZooId::h);
  const int m = 4;
  const std::size_t n = 50;
  const auto& rule = gauss_legendre(512);

  std::vector<double> p(m, 0.0);
  for (int k = 0; k < m; ++k) {
    p[k] = zd.cdf((k + 1.0) / m) - zd.cdf(static_cast<double>(k) / m);
  }
  double exact = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    double mean = 0.0, second = 0.0;
    for (int k = 0; k < m; ++k) {
      const double bk = bernstein_basis(m - 1, k, x);
      mean += p[k] * bk;
      second += p[k] * bk * bk;
    }
    const double bias = m * mean - zd.pdf(x);
    const double var =
        (static_cast<double>(m) * m / n) * (second - mean * mean);
    exact += rule.weights[i] * (bias * bias + var);
  }
  // frozen from an independent high-precision evaluation of the same formula
  CHECK(exact == doctest::Approx(0.024678).epsilon(2e-4));

  // the Monte Carlo harness must land within a few standard errors;
  // the single-order optimal order for this density at n = 50 is exactly 4
  const TheoryConstants tc = theory_constants(zd.density());
  REQUIRE(optimal_order(EstimatorKind::vitale, tc, 50) == 4);
  TableConfig cfg;
  cfg.densities = {ZooId::h};
  cfg.estimators = {EstimatorSpec::parse("vitale")};
  cfg.n_values = {n};
  cfg.trials = 400;
  cfg.seed = 11;
  const auto rep = run_table(cfg).front();
  CHECK(std::abs(rep.averaged_ise - exact) <= 5.0 * rep.std_error);
}

TEST_CASE("recursive monte carlo agrees with the exact risk recursion") {
  // E f_n and Var f_n satisfy the same recursion as f_n with Z replaced by
  // its first two moments; all moments are exact bin-probability sums
  const ZooDensity& zd = zoo_density(ZooId::h);
  const std::size_t n = 50;
  const auto& rule = gauss_legendre(256);
  const TheoryConstants tc = theory_constants(zd.density());
  const StepsizeSchedule r1 = StepsizeSchedule::preset("r1");
  const OrderSchedule orders(optimal_order_constant(tc, r1), 2.0 / 9.0);

  std::vector<double> mean(rule.nodes.size(), 0.0), var(rule.nodes.size(), 0.0);
  for (std::size_t step = 1; step <= n; ++step) {
    const int m = orders.at(step);
    const int h = m / 2;
    const double gamma = r1.at(step);
    std::vector<double> pk(m, 0.0);
    for (int k = 0; k < m; ++k) {
      pk[k] = zd.cdf((k + 1.0) / m) - zd.cdf(static_cast<double>(k) / m);
    }
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = rule.nodes[i];
      double ez = 0.0, ez2 = 0.0;
      for (int k = 0; k < m; ++k) {
        const double z = 2.0 * m * bernstein_basis(m - 1, k, x) -
                         h * bernstein_basis(h - 1, k / 2, x);
        ez += pk[k] * z;
        ez2 += pk[k] * z * z;
      }
      var[i] = (1.0 - gamma) * (1.0 - gamma) * var[i] +
               gamma * gamma * (ez2 - ez * ez);
      mean[i] = (1.0 - gamma) * mean[i] + gamma * ez;
    }
  }
  double exact = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double bias = mean[i] - zd.pdf(rule.nodes[i]);
    exact += rule.weights[i] * (bias * bias + var[i]);
  }
  CHECK(exact == doctest::Approx(0.027415).epsilon(3e-4));

  TableConfig cfg;
  cfg.densities = {ZooId::h};
  cfg.estimators = {EstimatorSpec::parse("recursive:r1")};
  cfg.n_values = {n};
  cfg.trials = 400;
  cfg.seed = 17;
  const auto rep = run_table(cfg).front();
  CHECK(std::abs(rep.averaged_ise - exact) <= 5.0 * rep.std_error);
}

TEST_CASE("slope fitting") {
  const std::vector<std::pair<double, double>> clean{
      {100, 1e-2}, {1000, 1e-3}};  // slope exactly -1
  CHECK(slope_from_points(clean).slope == doctest::Approx(-1.0));
  CHECK_FALSE(slope_from_points(clean).degenerate);

  // an estimator fixed to the truth gives zero ISE: flagged, no slope
  const std::vector<std::pair<double, double>> degenerate{{100, 0.0},
                                                          {1000, 0.0}};
  CHECK(slope_from_points(degenerate).degenerate);
  const std::vector<std::pair<double, double>> single{{100, 1e-2}};
  CHECK(slope_from_points(single).degenerate);

  CHECK_THROWS_AS(
      convergence_slope(EstimatorSpec::parse("vitale"), ZooId::a,
                        std::vector<std::size_t>{100, 200}, 5, 1),
      std::invalid_argument);  // grid must span a decade
}

TEST_CASE("clt check: errors and the centered regime") {
  const StepsizeSchedule r1 = StepsizeSchedule::preset("r1");
  // a > 2/9 puts the limit in the c = 0 (centered) regime; the order
  // constant is large enough that the residual m^-2 bias is negligible
  // against the monte carlo error of the mean
  const OrderSchedule wide(4.0, 0.45);
  CHECK_THROWS_AS(clt_check(ZooId::a, 0.5, r1, wide, 100, 1, 7),
                  std::domain_error);
  CHECK_THROWS_AS(clt_check(ZooId::a, 0.5, r1, wide, 100, 10, 7),
                  std::domain_error);
  CHECK_THROWS_AS(clt_check(ZooId::a, 0.0, r1, wide, 100, 100, 7),
                  std::domain_error);

  const auto r = clt_check(ZooId::a, 0.5, r1, wide, 4000, 400, 7);
  CHECK(r.predicted_center == 0.0);
  // centered regime: the sample mean vanishes within monte carlo error
  CHECK(std::abs(r.sample_mean) <=
        3.0 * r.sample_sd / std::sqrt(static_cast<double>(r.trials)));
  CHECK(r.sample_sd > 0.0);
  CHECK(r.normality_p_value >= 0.0);
}

TEST_CASE("bench: report structure on a small run") {
  const auto rep = bench_update(100, 100, 64, 3);
  CHECK(rep.recursive_total_s > 0.0);
  CHECK(rep.batch_total_s > 0.0);
  CHECK(rep.recursive_per_arrival_s > 0.0);
  CHECK(rep.batch_per_arrival_s > 0.0);
  CHECK(rep.recursive_flatness >= 1.0);
  CHECK_THROWS_AS(bench_update(10, 0, 64), std::invalid_argument);
  CHECK_THROWS_AS(bench_update(10, 10, 0), std::invalid_argument);
  // a one-point grid still produces a valid comparison
  const auto tiny = bench_update(50, 50, 1, 3);
  CHECK(tiny.grid_size == 1);
  CHECK(tiny.recursive_total_s > 0.0);
}

} // TEST_SUITE
