#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bernstein/asymptotics.hpp"
#include "bernstein/estimators.hpp"
#include "bernstein/zoo.hpp"

namespace bernstein {

//! One estimator configuration of the comparison study. The order (or order
//! schedule) is not part of the spec: the harness derives it from the true
//! density's theory constants, per estimator kind.
struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::vitale;
  double gamma0 = 1.0;   // recursive kind
  int b = 2;             // two-order kinds
  double eps = 1e-5;     // multiplicative / normalized

  std::string label() const;

  //! Accepted forms: "vitale", "leblanc", "generalized:3",
  //! "multiplicative:2", "normalized:4", "recursive:r1" (preset) or
  //! "recursive:0.9" (explicit gamma0).
  static EstimatorSpec parse(std::string_view text);
};

//! Per-cell Monte Carlo outcome: the ISE of every trial plus the average.
struct TrialReport {
  ZooId density{};
  EstimatorSpec spec;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> ise_values;
  double averaged_ise = 0.0;
  double std_error = 0.0;
};

struct TableConfig {
  std::vector<ZooId> densities;
  std::vector<EstimatorSpec> estimators;
  std::vector<std::size_t> n_values;
  std::size_t trials = 500;
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0: hardware concurrency
  int quadrature_nodes = 512;
};

//! Integrated squared error of an estimate against a zoo density,
//! by q-node Gauss-Legendre quadrature.
double ise(const std::function<double(double)>& estimate,
           const ZooDensity& truth, int q = 512);

//! Averaged-ISE study. Trial k of a (density, n) cell draws one sample
//! (seed derived from config seed, density, n, k) and feeds it to every
//! estimator, so columns are comparable on identical data. Trials run in
//! parallel; results are bit-identical for any thread count.
std::vector<TrialReport> run_table(const TableConfig& config);

//! Least-squares slope of log(avg ISE) against log n. Degenerate inputs
//! (nonpositive averages, zero spread) are flagged instead of producing a
//! slope.
struct SlopeFit {
  double slope = 0.0;
  bool degenerate = false;
};
SlopeFit slope_from_points(std::span<const std::pair<double, double>> n_ise);

struct SlopeResult {
  SlopeFit fit;
  std::vector<std::pair<double, double>> points;  // (n, averaged ISE)
};
SlopeResult convergence_slope(const EstimatorSpec& spec, ZooId density,
                              std::span<const std::size_t> n_grid,
                              std::size_t trials, std::uint64_t seed,
                              unsigned threads = 0);

//! Monte Carlo check of the pointwise limit law at interior x: standardizes
//! gamma_n^(-1/2) m_n^(-1/4) (f_n(x) - f(x)) over repeated samples and runs
//! a normality test against the predicted spread.
struct CltCheckResult {
  double sample_mean = 0.0;
  double sample_sd = 0.0;
  double predicted_center = 0.0;
  double predicted_sd = 0.0;
  double normality_p_value = 0.0;
  std::size_t trials = 0;
};
CltCheckResult clt_check(ZooId density, double x, const StepsizeSchedule& step,
                         const OrderSchedule& orders, std::size_t n,
                         std::size_t trials, std::uint64_t seed,
                         unsigned threads = 0);

//! Wall-clock comparison of maintaining the recursive estimate under
//! streaming arrivals versus refitting the single-order batch estimator
//! from scratch at each arrival, both evaluated on the same grid.
struct BenchReport {
  std::size_t n_initial = 0;
  std::size_t n_additional = 0;
  int grid_size = 0;
  double recursive_total_s = 0.0;
  double batch_total_s = 0.0;
  double recursive_per_arrival_s = 0.0;
  double batch_per_arrival_s = 0.0;
  //! max/min ratio of per-arrival cost across quarters of the run
  double recursive_flatness = 0.0;
  //! last-quarter / first-quarter per-arrival cost
  double batch_growth = 0.0;
};
BenchReport bench_update(std::size_t n_initial, std::size_t n_additional,
                         int grid_size = 512, std::uint64_t seed = 42);

} // namespace bernstein
