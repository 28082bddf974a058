// berndens: Bernstein-polynomial density estimation at the command line.
//
// Subcommands: fit, lscv, theory, simulate, bench. Exit codes: 0 success,
// 1 usage error, 2 runtime error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bernstein/asymptotics.hpp"
#include "bernstein/estimators.hpp"
#include "bernstein/io.hpp"
#include "bernstein/selection.hpp"
#include "bernstein/simulate.hpp"
#include "bernstein/transforms.hpp"
#include "bernstein/zoo.hpp"

namespace {

using nlohmann::json;
using namespace bernstein;

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct FitOptions {
  std::string input;
  std::string output;
  std::string support = "unit";
  std::string estimator = "vitale";
  std::string format = "csv";
  int m = 0;                 // 0: select by cross-validation
  double order_constant = 0;  // recursive; 0: select by cross-validation
  double order_exponent = 2.0 / 9.0;
  int grid = 512;
};

struct LscvOptions {
  std::string input;
  std::string output;
  std::string support = "unit";
  std::string estimator = "vitale";
  int m_min = 0, m_max = 0;  // 0: defaults
  double a_min = 0.10, a_max = 0.99, a_step = 0.01;
};

Sample load_sample(const std::string& input, const std::string& support) {
  const ObservationFile file = read_observation_file(input);
  Sample sample;
  sample.transform = SupportTransform::parse(support);
  sample.values.reserve(file.values.size());
  for (std::size_t i = 0; i < file.values.size(); ++i) {
    try {
      sample.values.push_back(sample.transform.forward(file.values[i]));
    } catch (const std::domain_error& e) {
      throw std::runtime_error(input + ":" + std::to_string(file.lines[i]) +
                               ": " + e.what());
    }
  }
  return sample;
}

std::vector<int> candidate_orders(const LscvOptions& opt, std::size_t n,
                                  int b) {
  if (opt.m_min == 0 && opt.m_max == 0) {
    return default_order_candidates(n, b);
  }
  const int lo = opt.m_min > 0 ? opt.m_min : b;
  const int hi = opt.m_max > 0 ? opt.m_max : static_cast<int>(2 * n);
  if (lo > hi) throw std::invalid_argument("lscv: m-min exceeds m-max");
  std::vector<int> out;
  for (int m = lo; m <= hi; ++m) {
    if (m % b == 0) out.push_back(m);
  }
  if (out.empty()) {
    throw std::invalid_argument("lscv: empty candidate range");
  }
  return out;
}

EstimatorFactory factory_for(const EstimatorSpec& spec) {
  return [spec](std::span<const double> obs, int m) {
    Sample inner;
    inner.values.assign(obs.begin(), obs.end());
    const BatchEstimator est =
        BatchEstimator::make(spec.kind, inner, m, spec.b, spec.eps);
    return [est](double x) { return est(x); };
  };
}

LscvResult run_lscv(const Sample& sample, const EstimatorSpec& spec,
                    const LscvOptions& opt) {
  const std::size_t n = sample.values.size();
  switch (spec.kind) {
    case EstimatorKind::vitale:
      return lscv_vitale(sample, candidate_orders(opt, n, 2));
    case EstimatorKind::leblanc:
      return lscv_generalized(sample, 2, candidate_orders(opt, n, 2));
    case EstimatorKind::generalized:
      return lscv_generalized(sample, spec.b,
                              candidate_orders(opt, n, spec.b));
    case EstimatorKind::multiplicative:
    case EstimatorKind::normalized:
      return lscv_generic(sample, factory_for(spec),
                          candidate_orders(opt, n, spec.b));
    case EstimatorKind::recursive: {
      std::vector<double> exponents;
      for (double a = opt.a_min; a <= opt.a_max + 1e-12; a += opt.a_step) {
        exponents.push_back(a);
      }
      return lscv_recursive(sample, StepsizeSchedule(spec.gamma0, 1.0),
                            exponents);
    }
  }
  throw std::logic_error("run_lscv: bad kind");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

int cmd_fit(const FitOptions& opt) {
  const Sample sample = load_sample(opt.input, opt.support);
  const EstimatorSpec spec = EstimatorSpec::parse(opt.estimator);
  const std::size_t n = sample.values.size();

  // uniform grid in the transformed space; endpoints that map to infinity
  // are dropped
  const auto& transform = sample.transform;
  const bool skip_hi = transform.kind() == SupportTransform::Kind::real_line ||
                       transform.kind() == SupportTransform::Kind::half_line;
  const bool skip_lo = transform.kind() == SupportTransform::Kind::real_line;
  std::vector<double> us;
  for (int j = 0; j < opt.grid; ++j) {
    const double u = opt.grid == 1
                         ? 0.5
                         : static_cast<double>(j) / (opt.grid - 1.0);
    if ((skip_lo && u == 0.0) || (skip_hi && u == 1.0)) continue;
    us.push_back(u);
  }

  std::function<double(double)> estimate;
  json meta;
  meta["n"] = n;
  meta["estimator"] = spec.label();

  if (spec.kind == EstimatorKind::recursive) {
    double c = opt.order_constant;
    double a = opt.order_exponent;
    if (c <= 0.0) {
      LscvOptions lopt;
      const auto sel = run_lscv(sample, spec, lopt);
      c = 1.0;
      a = sel.selected;
    }
    const StepsizeSchedule step(spec.gamma0, 1.0);
    const OrderSchedule orders(c, a);
    // run the recursion on the output grid itself: the emitted values are
    // exact, not interpolated
    auto est = std::make_shared<RecursiveEstimator>(step, orders, us);
    est->update(std::span<const double>(sample.values));
    meta["order_constant"] = c;
    meta["order_exponent"] = a;
    meta["gamma0"] = spec.gamma0;
    meta["mass"] = 1.0 - est->pi();  // exact mass identity
    estimate = [est](double u) { return (*est)(u); };
  } else {
    int m = opt.m;
    if (m == 0) {
      LscvOptions lopt;
      const auto sel = run_lscv(sample, spec, lopt);
      m = static_cast<int>(sel.selected);
    }
    const auto est = std::make_shared<BatchEstimator>(
        BatchEstimator::make(spec.kind, sample, m, spec.b, spec.eps));
    meta["m"] = m;
    estimate = [est](double u) { return (*est)(u); };
  }

  std::vector<double> xs, ys;
  for (double u : us) {
    const double x = transform.backward(u);
    xs.push_back(x);
    ys.push_back(transform.backward_density(estimate, x));
  }

  if (opt.format == "json") {
    json out;
    out["meta"] = meta;
    out["x"] = xs;
    out["density"] = ys;
    emit(opt.output, out.dump(2) + "\n");
  } else {
    std::string text = "x,density\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      text += format_number(xs[i]) + "," + format_number(ys[i]) + "\n";
    }
    emit(opt.output, text);
  }
  return 0;
}

int cmd_lscv(const LscvOptions& opt) {
  const Sample sample = load_sample(opt.input, opt.support);
  const EstimatorSpec spec = EstimatorSpec::parse(opt.estimator);
  const LscvResult result = run_lscv(sample, spec, opt);
  json out;
  out["estimator"] = spec.label();
  out["n"] = sample.values.size();
  out["candidates"] = result.candidates;
  out["scores"] = result.scores;
  out["argmin"] = result.selected;
  emit(opt.output, out.dump(2) + "\n");
  return 0;
}

int cmd_theory(const std::string& density, const std::vector<std::size_t>& ns,
               double gamma0, const std::string& output) {
  const ZooDensity& zd = zoo_density(zoo_id_from(density));
  const TheoryConstants tc = theory_constants(zd.density());
  json out;
  out["density"] = density;
  out["constants"] = {{"c1", tc.c1}, {"c2", tc.c2}, {"c3", tc.c3},
                      {"c4", tc.c4}, {"c5", tc.c5}, {"c6", tc.c6}};
  for (int b : {2, 3, 4}) {
    out["lambda1"][std::to_string(b)] = lambda1(b);
    out["lambda2"][std::to_string(b)] = lambda2(b);
  }
  out["order_constant_recursive"] =
      optimal_order_constant(tc, StepsizeSchedule(gamma0, 1.0));
  for (std::size_t n : ns) {
    json row;
    row["n"] = n;
    const double nn = static_cast<double>(n);
    row["optimal_order"] = {
        {"vitale", optimal_order(EstimatorKind::vitale, tc, nn)},
        {"leblanc", optimal_order(EstimatorKind::leblanc, tc, nn)},
        {"generalized:3", optimal_order(EstimatorKind::generalized, tc, nn, 3)},
        {"generalized:4", optimal_order(EstimatorKind::generalized, tc, nn, 4)},
        {"multiplicative:2",
         optimal_order(EstimatorKind::multiplicative, tc, nn, 2)},
        {"normalized:2", optimal_order(EstimatorKind::normalized, tc, nn, 2)},
        {"recursive", optimal_order(EstimatorKind::recursive, tc, nn, 2,
                                    gamma0)}};
    row["optimal_mise"] = {
        {"vitale", optimal_mise(EstimatorKind::vitale, tc, nn)},
        {"leblanc", optimal_mise(EstimatorKind::leblanc, tc, nn)},
        {"recursive", optimal_mise(EstimatorKind::recursive, tc, nn, 2,
                                   gamma0)}};
    out["per_n"].push_back(row);
  }
  emit(output, out.dump(2) + "\n");
  return 0;
}

TableConfig parse_simulate_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config '" + path.string() + "'");
  }
  json j;
  in >> j;
  TableConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "densities") {
      for (const auto& d : value) {
        cfg.densities.push_back(zoo_id_from(d.get<std::string>()));
      }
    } else if (key == "estimators") {
      for (const auto& e : value) {
        cfg.estimators.push_back(EstimatorSpec::parse(e.get<std::string>()));
      }
    } else if (key == "n") {
      for (const auto& n : value) cfg.n_values.push_back(n.get<std::size_t>());
    } else if (key == "trials") {
      cfg.trials = value.get<std::size_t>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "threads") {
      cfg.threads = value.get<unsigned>();
    } else {
      throw std::invalid_argument("simulate config: unrecognized field '" +
                                  key + "'");
    }
  }
  return cfg;
}

int cmd_simulate(const std::string& config_path, const std::string& output,
                 const std::string& format) {
  const TableConfig cfg = parse_simulate_config(config_path);
  const auto reports = run_table(cfg);

  if (format == "json") {
    json out;
    for (const auto& rep : reports) {
      json row;
      row["density"] = std::string(1, zoo_label(rep.density));
      row["estimator"] = rep.spec.label();
      row["n"] = rep.n;
      row["trials"] = rep.trials;
      row["seed"] = rep.seed;
      row["averaged_ise"] = rep.averaged_ise;
      row["std_error"] = rep.std_error;
      row["ise"] = rep.ise_values;
      out["cells"].push_back(row);
    }
    emit(output, out.dump(2) + "\n");
    return 0;
  }

  // table layout: one row per (density, n), one column per estimator
  const bool markdown = format == "md";
  const std::string sep = markdown ? " | " : ",";
  std::string text;
  if (markdown) text += "| ";
  text += "density" + sep + "n";
  for (const auto& spec : cfg.estimators) text += sep + spec.label();
  text += markdown ? " |\n" : "\n";
  if (markdown) {
    text += "|---|---";
    for (std::size_t i = 0; i < cfg.estimators.size(); ++i) text += "|---";
    text += "|\n";
  }
  for (ZooId id : cfg.densities) {
    for (std::size_t n : cfg.n_values) {
      if (markdown) text += "| ";
      text += std::string(1, zoo_label(id)) + sep + std::to_string(n);
      for (const auto& spec : cfg.estimators) {
        for (const auto& rep : reports) {
          if (rep.density == id && rep.n == n &&
              rep.spec.label() == spec.label()) {
            text += sep + format_number(rep.averaged_ise);
          }
        }
      }
      text += markdown ? " |\n" : "\n";
    }
  }
  emit(output, text);
  return 0;
}

int cmd_bench(std::size_t n_initial, std::size_t n_additional, int grid,
              std::uint64_t seed, const std::string& output) {
  const BenchReport rep = bench_update(n_initial, n_additional, grid, seed);
  json out;
  out["n_initial"] = rep.n_initial;
  out["n_additional"] = rep.n_additional;
  out["grid"] = rep.grid_size;
  out["recursive_total_s"] = rep.recursive_total_s;
  out["batch_total_s"] = rep.batch_total_s;
  out["recursive_per_arrival_s"] = rep.recursive_per_arrival_s;
  out["batch_per_arrival_s"] = rep.batch_per_arrival_s;
  out["recursive_flatness"] = rep.recursive_flatness;
  out["batch_growth"] = rep.batch_growth;
  emit(output, out.dump(2) + "\n");
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bernstein-polynomial density estimation: recursive and batch "
      "estimators, cross-validation, asymptotic constants, and a Monte "
      "Carlo harness"};
  app.require_subcommand(1);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand(
      "fit", "fit a density estimate to a CSV of observations");
  fit_cmd->add_option("--input", fit.input, "observations, one per line")
      ->required();
  fit_cmd->add_option("--output", fit.output, "output path ('-' for stdout)")
      ->required();
  fit_cmd->add_option("--support", fit.support,
                      "'lo,hi', 'real', 'halfline' or 'unit'");
  fit_cmd->add_option(
      "--estimator", fit.estimator,
      "vitale | leblanc | generalized:B | multiplicative:B | normalized:B | "
      "recursive:{r1,r2,r3,gamma0}");
  fit_cmd->add_option("--m", fit.m,
                      "order for batch kinds (cross-validated when absent)");
  fit_cmd->add_option("--order-constant", fit.order_constant,
                      "recursive order constant c in m_i = c i^a "
                      "(cross-validated when absent)");
  fit_cmd->add_option("--order-exponent", fit.order_exponent,
                      "recursive order exponent a");
  fit_cmd->add_option("--grid", fit.grid, "evaluation grid size")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--format", fit.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  LscvOptions lscv;
  auto* lscv_cmd = app.add_subcommand(
      "lscv", "least-squares cross-validation order selection");
  lscv_cmd->add_option("--input", lscv.input, "observations, one per line")
      ->required();
  lscv_cmd->add_option("--output", lscv.output, "output path ('-' for stdout)");
  lscv_cmd->add_option("--support", lscv.support,
                       "'lo,hi', 'real', 'halfline' or 'unit'");
  lscv_cmd->add_option("--estimator", lscv.estimator, "estimator spec");
  lscv_cmd->add_option("--m-min", lscv.m_min, "smallest candidate order");
  lscv_cmd->add_option("--m-max", lscv.m_max, "largest candidate order");
  lscv_cmd->add_option("--a-min", lscv.a_min,
                       "smallest exponent (recursive kind)");
  lscv_cmd->add_option("--a-max", lscv.a_max,
                       "largest exponent (recursive kind)");
  lscv_cmd->add_option("--a-step", lscv.a_step, "exponent grid step");

  std::string theory_density;
  std::vector<std::size_t> theory_n{50, 200, 500};
  double theory_gamma0 = 1.0;
  std::string theory_output;
  auto* theory_cmd = app.add_subcommand(
      "theory", "dump asymptotic constants and optimal orders as JSON");
  theory_cmd->add_option("--density", theory_density, "zoo density a..j")
      ->required();
  theory_cmd->add_option("--n", theory_n, "sample sizes for optimal orders");
  theory_cmd->add_option("--gamma0", theory_gamma0,
                         "recursive stepsize constant");
  theory_cmd->add_option("--output", theory_output,
                         "output path ('-' for stdout)");

  std::string sim_config, sim_output;
  std::string sim_format = "csv";
  auto* sim_cmd = app.add_subcommand(
      "simulate", "averaged-ISE study from a JSON configuration");
  sim_cmd->add_option("--config", sim_config, "JSON config file")->required();
  sim_cmd->add_option("--output", sim_output, "output path ('-' for stdout)");
  sim_cmd->add_option("--format", sim_format, "csv | md | json")
      ->check(CLI::IsMember({"csv", "md", "json"}));

  std::size_t bench_initial = 500, bench_additional = 500;
  int bench_grid = 512;
  std::uint64_t bench_seed = 42;
  std::string bench_output;
  auto* bench_cmd = app.add_subcommand(
      "bench", "streaming-update cost: recursive vs batch refit");
  bench_cmd->add_option("--n-initial", bench_initial, "warm-start size");
  bench_cmd->add_option("--n-additional", bench_additional,
                        "timed arrivals");
  bench_cmd->add_option("--grid", bench_grid, "evaluation grid size")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_seed, "sampling seed");
  bench_cmd->add_option("--output", bench_output,
                        "output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit);
    if (lscv_cmd->parsed()) return cmd_lscv(lscv);
    if (theory_cmd->parsed()) {
      return cmd_theory(theory_density, theory_n, theory_gamma0,
                        theory_output);
    }
    if (sim_cmd->parsed()) {
      return cmd_simulate(sim_config, sim_output, sim_format);
    }
    if (bench_cmd->parsed()) {
      return cmd_bench(bench_initial, bench_additional, bench_grid, bench_seed,
                       bench_output);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
