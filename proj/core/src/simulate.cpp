#include "bernstein/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "bernstein/quadrature.hpp"
#include "bernstein/stats.hpp"

namespace bernstein {

namespace {

double parse_gamma0(std::string_view arg) {
  if (arg == "r1") return 1.0;
  if (arg == "r2") return 8.0 / 9.0;
  if (arg == "r3") return 4.0 / 5.0;
  std::size_t used = 0;
  const std::string s(arg);
  const double v = std::stod(s, &used);
  if (used != s.size()) {
    throw std::invalid_argument("EstimatorSpec: bad gamma0 '" + s + "'");
  }
  return v;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

//! Deterministic parallel loop: worker t handles indices t, t+T, ...
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mtx;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mtx);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t cell_stream(ZooId id, std::size_t n) {
  return (static_cast<std::uint64_t>(id) + 1) * 0x100000000ULL +
         static_cast<std::uint64_t>(n);
}

} // namespace

std::string EstimatorSpec::label() const {
  switch (kind) {
    case EstimatorKind::vitale: return "vitale";
    case EstimatorKind::leblanc: return "leblanc";
    case EstimatorKind::generalized:
      return "generalized:" + std::to_string(b);
    case EstimatorKind::multiplicative:
      return "multiplicative:" + std::to_string(b);
    case EstimatorKind::normalized:
      return "normalized:" + std::to_string(b);
    case EstimatorKind::recursive: {
      if (gamma0 == 1.0) return "recursive:r1";
      if (gamma0 == 8.0 / 9.0) return "recursive:r2";
      if (gamma0 == 4.0 / 5.0) return "recursive:r3";
      char buf[32];
      std::snprintf(buf, sizeof(buf), "recursive:%.6g", gamma0);
      return buf;
    }
  }
  return "?";
}

EstimatorSpec EstimatorSpec::parse(std::string_view text) {
  EstimatorSpec spec;
  const auto colon = text.find(':');
  const std::string_view head =
      colon == std::string_view::npos ? text : text.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  spec.kind = estimator_kind_from(head);
  switch (spec.kind) {
    case EstimatorKind::vitale:
    case EstimatorKind::leblanc:
      break;
    case EstimatorKind::generalized:
    case EstimatorKind::multiplicative:
    case EstimatorKind::normalized:
      if (!arg.empty()) spec.b = std::stoi(std::string(arg));
      if (spec.b < 2) {
        throw std::invalid_argument("EstimatorSpec: b must be >= 2");
      }
      break;
    case EstimatorKind::recursive:
      if (!arg.empty()) spec.gamma0 = parse_gamma0(arg);
      break;
  }
  return spec;
}

double ise(const std::function<double(double)>& estimate,
           const ZooDensity& truth, int q) {
  const auto& rule = gauss_legendre(q);
  return rule.integrate([&](double x) {
    const double d = estimate(x) - truth.pdf(x);
    return d * d;
  });
}

namespace {

//! Everything fixed about one (density, spec) pair across trials.
struct PreparedEstimator {
  EstimatorSpec spec;
  // recursive configuration
  StepsizeSchedule step{1.0, 1.0};
  OrderSchedule orders{0.0, 2.0 / 9.0};
};

PreparedEstimator prepare(const EstimatorSpec& spec, const TheoryConstants& tc) {
  PreparedEstimator p{spec};
  if (spec.kind == EstimatorKind::recursive) {
    p.step = StepsizeSchedule(spec.gamma0, 1.0);
    p.orders = OrderSchedule(optimal_order_constant(tc, p.step), 2.0 / 9.0);
  }
  return p;
}

double trial_ise(const PreparedEstimator& prep, const Sample& sample, int m,
                 const std::vector<double>& truth_at_nodes, int q) {
  if (prep.spec.kind == EstimatorKind::recursive) {
    RecursiveEstimator est =
        RecursiveEstimator::on_quadrature_grid(prep.step, prep.orders, q);
    est.update(std::span<const double>(sample.values));
    return est.squared_error_vs(truth_at_nodes);
  }
  const BatchEstimator est =
      BatchEstimator::make(prep.spec.kind, sample, m, prep.spec.b,
                           prep.spec.eps);
  const auto& rule = gauss_legendre(q);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double d = est(rule.nodes[i]) - truth_at_nodes[i];
    s += rule.weights[i] * d * d;
  }
  return s;
}

} // namespace

std::vector<TrialReport> run_table(const TableConfig& config) {
  if (config.densities.empty() || config.estimators.empty() ||
      config.n_values.empty()) {
    throw std::invalid_argument("run_table: empty configuration");
  }
  if (config.trials == 0) {
    throw std::invalid_argument("run_table: trials must be >= 1");
  }
  const unsigned threads = resolve_threads(config.threads);
  const int q = config.quadrature_nodes;
  const auto& rule = gauss_legendre(q);

  std::vector<TrialReport> reports;
  for (ZooId id : config.densities) {
    const ZooDensity& zd = zoo_density(id);
    const TheoryConstants tc = theory_constants(zd.density());

    std::vector<double> truth_at_nodes(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      truth_at_nodes[i] = zd.pdf(rule.nodes[i]);
    }

    std::vector<PreparedEstimator> prepared;
    prepared.reserve(config.estimators.size());
    for (const auto& spec : config.estimators) prepared.push_back(prepare(spec, tc));

    for (std::size_t n : config.n_values) {
      if (n == 0) throw std::invalid_argument("run_table: n must be >= 1");
      // batch orders are fixed per (kind, n); recursive uses its schedule
      std::vector<int> orders(prepared.size(), 0);
      for (std::size_t s = 0; s < prepared.size(); ++s) {
        if (prepared[s].spec.kind != EstimatorKind::recursive) {
          orders[s] = optimal_order(prepared[s].spec.kind, tc,
                                    static_cast<double>(n),
                                    prepared[s].spec.b);
        }
      }

      std::vector<std::vector<double>> ise_matrix(
          prepared.size(), std::vector<double>(config.trials, 0.0));
      const std::uint64_t stream = cell_stream(id, n);
      parallel_for(config.trials, threads, [&](std::size_t k) {
        Sample sample;
        sample.values =
            zd.sample(n, derive_seed(config.seed, stream, k));
        for (std::size_t s = 0; s < prepared.size(); ++s) {
          ise_matrix[s][k] =
              trial_ise(prepared[s], sample, orders[s], truth_at_nodes, q);
        }
      });

      for (std::size_t s = 0; s < prepared.size(); ++s) {
        TrialReport rep;
        rep.density = id;
        rep.spec = config.estimators[s];
        rep.n = n;
        rep.trials = config.trials;
        rep.seed = config.seed;
        rep.ise_values = std::move(ise_matrix[s]);
        double mean = 0.0;
        for (double v : rep.ise_values) mean += v;
        mean /= static_cast<double>(config.trials);
        double ss = 0.0;
        for (double v : rep.ise_values) ss += (v - mean) * (v - mean);
        rep.averaged_ise = mean;
        rep.std_error =
            config.trials > 1
                ? std::sqrt(ss / (static_cast<double>(config.trials) - 1.0) /
                            static_cast<double>(config.trials))
                : 0.0;
        reports.push_back(std::move(rep));
      }
    }
  }
  return reports;
}

SlopeFit slope_from_points(std::span<const std::pair<double, double>> n_ise) {
  SlopeFit fit;
  if (n_ise.size() < 2) {
    fit.degenerate = true;
    return fit;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [n, v] : n_ise) {
    if (!(n > 0.0) || !(v > 0.0) || !std::isfinite(v)) {
      fit.degenerate = true;
      return fit;
    }
    const double lx = std::log(n), ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double count = static_cast<double>(n_ise.size());
  const double denom = count * sxx - sx * sx;
  if (!(denom > 0.0)) {
    fit.degenerate = true;
    return fit;
  }
  fit.slope = (count * sxy - sx * sy) / denom;
  return fit;
}

SlopeResult convergence_slope(const EstimatorSpec& spec, ZooId density,
                              std::span<const std::size_t> n_grid,
                              std::size_t trials, std::uint64_t seed,
                              unsigned threads) {
  if (n_grid.size() < 2) {
    throw std::invalid_argument("convergence_slope: need at least two n");
  }
  const auto [min_it, max_it] = std::minmax_element(n_grid.begin(), n_grid.end());
  if (*max_it < 10 * *min_it) {
    throw std::invalid_argument(
        "convergence_slope: n grid must span at least one decade");
  }
  TableConfig config;
  config.densities = {density};
  config.estimators = {spec};
  config.n_values.assign(n_grid.begin(), n_grid.end());
  config.trials = trials;
  config.seed = seed;
  config.threads = threads;
  const auto reports = run_table(config);

  SlopeResult result;
  for (const auto& rep : reports) {
    result.points.emplace_back(static_cast<double>(rep.n), rep.averaged_ise);
  }
  result.fit = slope_from_points(result.points);
  return result;
}

CltCheckResult clt_check(ZooId density, double x, const StepsizeSchedule& step,
                         const OrderSchedule& orders, std::size_t n,
                         std::size_t trials, std::uint64_t seed,
                         unsigned threads) {
  if (!(x > 0.0 && x < 1.0)) {
    throw std::domain_error("clt_check: interior x only");
  }
  if (trials < 30) {
    throw std::domain_error("clt_check: need at least 30 replicates");
  }
  const ZooDensity& zd = zoo_density(density);
  const double fx = zd.pdf(x);
  const double scale = std::pow(step.at(n), -0.5) *
                       std::pow(static_cast<double>(orders.at(n)), -0.25);

  std::vector<double> errors(trials, 0.0);
  parallel_for(trials, resolve_threads(threads), [&](std::size_t k) {
    std::mt19937_64 gen(derive_seed(seed, cell_stream(density, n), k));
    RecursiveEstimator est(step, orders, std::vector<double>{x});
    for (std::size_t i = 0; i < n; ++i) est.update(zd.draw(gen));
    errors[k] = scale * (est.values()[0] - fx);
  });

  CltCheckResult out;
  out.trials = trials;
  double mean = 0.0;
  for (double e : errors) mean += e;
  mean /= static_cast<double>(trials);
  double ss = 0.0;
  for (double e : errors) ss += (e - mean) * (e - mean);
  out.sample_mean = mean;
  out.sample_sd = std::sqrt(ss / (static_cast<double>(trials) - 1.0));

  const TheoryConstants tc = theory_constants(zd.density());
  const CltPrediction pred = clt_prediction(tc, zd.density(), x, step, orders);
  out.predicted_center = pred.center;
  out.predicted_sd = pred.stddev;
  out.normality_p_value = anderson_darling_normal(errors).p_value;
  return out;
}

BenchReport bench_update(std::size_t n_initial, std::size_t n_additional,
                         int grid_size, std::uint64_t seed) {
  if (n_additional == 0) {
    throw std::invalid_argument("bench_update: n_additional must be >= 1");
  }
  if (grid_size < 1) {
    throw std::invalid_argument("bench_update: grid_size must be >= 1");
  }
  using clock = std::chrono::steady_clock;
  const ZooDensity& zd = zoo_density(ZooId::a);
  std::vector<double> data =
      zd.sample(n_initial + n_additional, derive_seed(seed, 0xbe7c, 0));

  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  if (grid_size == 1) {
    grid[0] = 0.5;
  } else {
    for (int i = 0; i < grid_size; ++i) {
      grid[static_cast<std::size_t>(i)] = static_cast<double>(i) /
                                          (grid_size - 1.0);
    }
  }

  // recursive side: absorb the initial batch untimed, then time arrivals
  RecursiveEstimator rec(StepsizeSchedule(1.0, 1.0),
                         OrderSchedule(2.0, 2.0 / 9.0), grid);
  for (std::size_t i = 0; i < n_initial; ++i) rec.update(data[i]);

  const OrderSchedule batch_orders(1.0, 0.4);
  double sink = 0.0;

  const std::size_t quarters = 4;
  std::vector<double> rec_quarter(quarters, 0.0), batch_quarter(quarters, 0.0);
  std::vector<std::size_t> quarter_count(quarters, 0);

  std::vector<double> running(data.begin(),
                              data.begin() + static_cast<std::ptrdiff_t>(n_initial));
  for (std::size_t j = 0; j < n_additional; ++j) {
    const double obs = data[n_initial + j];
    const std::size_t quarter = j * quarters / n_additional;

    const auto t0 = clock::now();
    rec.update(obs);
    sink += rec.values()[0];
    const auto t1 = clock::now();

    running.push_back(obs);
    const VitaleEstimator batch(
        running, batch_orders.at(running.size()));
    for (double g : grid) sink += batch(g);
    const auto t2 = clock::now();

    rec_quarter[quarter] += std::chrono::duration<double>(t1 - t0).count();
    batch_quarter[quarter] += std::chrono::duration<double>(t2 - t1).count();
    quarter_count[quarter] += 1;
  }
  if (sink == 42.0) std::fprintf(stderr, "%f", sink);  // keep the work alive

  BenchReport rep;
  rep.n_initial = n_initial;
  rep.n_additional = n_additional;
  rep.grid_size = grid_size;
  double rmin = 1e300, rmax = 0.0;
  for (std::size_t qn = 0; qn < quarters; ++qn) {
    rep.recursive_total_s += rec_quarter[qn];
    rep.batch_total_s += batch_quarter[qn];
    if (quarter_count[qn] > 0) {
      const double per = rec_quarter[qn] / static_cast<double>(quarter_count[qn]);
      rmin = std::min(rmin, per);
      rmax = std::max(rmax, per);
    }
  }
  rep.recursive_per_arrival_s =
      rep.recursive_total_s / static_cast<double>(n_additional);
  rep.batch_per_arrival_s =
      rep.batch_total_s / static_cast<double>(n_additional);
  rep.recursive_flatness = rmin > 0.0 ? rmax / rmin : 0.0;
  const double first = quarter_count.front() > 0
                           ? batch_quarter.front() /
                                 static_cast<double>(quarter_count.front())
                           : 0.0;
  const double last = quarter_count.back() > 0
                          ? batch_quarter.back() /
                                static_cast<double>(quarter_count.back())
                          : 0.0;
  rep.batch_growth = first > 0.0 ? last / first : 0.0;
  return rep;
}

} // namespace bernstein
