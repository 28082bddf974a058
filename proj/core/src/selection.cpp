#include "bernstein/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bernstein/basis.hpp"
#include "bernstein/quadrature.hpp"

namespace bernstein {

namespace {

LscvResult finalize(std::vector<double> candidates, std::vector<double> scores) {
  LscvResult r;
  r.candidates = std::move(candidates);
  r.scores = std::move(scores);
  for (double s : r.scores) {
    if (!std::isfinite(s)) {
      throw std::runtime_error("lscv: non-finite score");
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.scores.size(); ++i) {
    const bool better = r.scores[i] < r.scores[best] ||
                        (r.scores[i] == r.scores[best] &&
                         r.candidates[i] < r.candidates[best]);
    if (better) best = i;
  }
  r.argmin_index = best;
  r.selected = r.candidates[best];
  return r;
}

void require_observations(const Sample& sample) {
  if (sample.values.size() < 2) {
    throw std::domain_error("lscv: need at least two observations");
  }
  for (double v : sample.values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::domain_error("lscv: observation outside [0,1]");
    }
  }
}

int max_candidate(std::span<const int> candidates) {
  int m = 2;
  for (int c : candidates) m = std::max(m, c);
  return m;
}

} // namespace

std::vector<int> default_order_candidates(std::size_t n, int b) {
  if (b < 2) throw std::invalid_argument("default_order_candidates: b >= 2");
  const int hi = static_cast<int>(2 * n);
  std::vector<int> out;
  for (int m = b; m <= hi; m += b) out.push_back(m);
  if (out.empty()) out.push_back(b);
  return out;
}

std::vector<double> default_exponent_candidates() {
  std::vector<double> out;
  for (int i = 10; i <= 99; ++i) out.push_back(i / 100.0);
  return out;
}

LscvResult lscv_vitale(const Sample& sample, std::span<const int> candidates) {
  require_observations(sample);
  if (candidates.empty()) throw std::invalid_argument("lscv: no candidates");
  const auto& obs = sample.values;
  const double n = static_cast<double>(obs.size());
  const auto& rule = gauss_legendre(std::max(512, max_candidate(candidates)));

  std::vector<double> cands, scores;
  for (int m : candidates) {
    if (m < 1) throw std::domain_error("lscv_vitale: order must be >= 1");
    const VitaleEstimator est(obs, m);
    const double sq = rule.integrate([&est](double x) {
      const double v = est(x);
      return v * v;
    });
    double sum_est = 0.0, sum_basis = 0.0;
    for (double xi : obs) {
      sum_est += est(xi);
      sum_basis += bernstein_basis(m - 1, bin_index(xi, m), xi);
    }
    cands.push_back(m);
    scores.push_back(sq - 2.0 / (n - 1.0) * (sum_est - m / n * sum_basis));
  }
  return finalize(std::move(cands), std::move(scores));
}

LscvResult lscv_generalized(const Sample& sample, int b,
                            std::span<const int> candidates) {
  require_observations(sample);
  if (b < 2) throw std::invalid_argument("lscv_generalized: b must be >= 2");
  if (candidates.empty()) throw std::invalid_argument("lscv: no candidates");
  const auto& obs = sample.values;
  const double n = static_cast<double>(obs.size());
  const auto& rule = gauss_legendre(std::max(512, max_candidate(candidates)));
  const double w_hi = static_cast<double>(b) / (b - 1.0);
  const double w_lo = 1.0 / (b - 1.0);

  std::vector<double> cands, scores;
  for (int m : candidates) {
    if (m < b || m % b != 0) {
      throw std::domain_error("lscv_generalized: candidate " +
                              std::to_string(m) + " not divisible by b = " +
                              std::to_string(b));
    }
    const int mh = m / b;
    const BatchEstimator est = BatchEstimator::generalized(sample, m, b);
    const double sq = rule.integrate([&est](double x) {
      const double v = est(x);
      return v * v;
    });
    double sum_est = 0.0, sum_kernel = 0.0;
    for (double xi : obs) {
      sum_est += est(xi);
      sum_kernel +=
          w_hi * m * bernstein_basis(m - 1, bin_index(xi, m), xi) -
          w_lo * mh * bernstein_basis(mh - 1, bin_index(xi, mh), xi);
    }
    cands.push_back(m);
    scores.push_back(sq - 2.0 / (n - 1.0) * (sum_est - sum_kernel / n));
  }
  return finalize(std::move(cands), std::move(scores));
}

namespace {

// f_n evaluated exactly at the sample points: run the recursion with the
// deduplicated sample as its grid.
std::vector<double> recursive_at_points(const StepsizeSchedule& step,
                                        const OrderSchedule& orders,
                                        const std::vector<double>& obs,
                                        const std::vector<double>& eval_at) {
  std::vector<double> grid(eval_at);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  RecursiveEstimator est(step, orders, grid);
  est.update(std::span<const double>(obs));
  std::vector<double> out;
  out.reserve(eval_at.size());
  for (double x : eval_at) out.push_back(est(x));
  return out;
}

double recursive_square_integral(const StepsizeSchedule& step,
                                 const OrderSchedule& orders,
                                 const std::vector<double>& obs, int q) {
  RecursiveEstimator est =
      RecursiveEstimator::on_quadrature_grid(step, orders, q);
  est.update(std::span<const double>(obs));
  const auto& rule = gauss_legendre(q);
  double sq = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = est.values()[i + 1];
    sq += rule.weights[i] * v * v;
  }
  return sq;
}

} // namespace

LscvResult lscv_recursive(const Sample& sample, const StepsizeSchedule& step,
                          std::span<const double> exponent_candidates) {
  require_observations(sample);
  if (exponent_candidates.empty()) {
    throw std::invalid_argument("lscv: no candidates");
  }
  const auto& obs = sample.values;
  const std::size_t n = obs.size();
  const double nn = static_cast<double>(n);
  const bool closed_form = step.gamma0() == 1.0 && step.alpha() == 1.0;

  std::vector<double> cands, scores;
  for (double a : exponent_candidates) {
    const OrderSchedule orders(1.0, a);
    // q large enough that f_n^2 (degree < 2 max m_i) integrates exactly
    const int q = std::max(512, orders.at(n));
    const double sq = recursive_square_integral(step, orders, obs, q);

    double score;
    if (closed_form) {
      const std::vector<double> fn_at =
          recursive_at_points(step, orders, obs, obs);
      double sum_fn = 0.0, sum_kernel = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const int mi = orders.at(i + 1);
        sum_fn += fn_at[i];
        sum_kernel += z_kernel(obs[i], obs[i], mi);
      }
      score = sq - 2.0 / (nn - 1.0) * (sum_fn - sum_kernel / nn);
    } else {
      // no closed form away from gamma_n = 1/n: deletion refits
      double sum_loo = 0.0;
      std::vector<double> reduced;
      reduced.reserve(n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        reduced.clear();
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) reduced.push_back(obs[j]);
        }
        sum_loo += recursive_at_points(step, orders, reduced, {obs[i]})[0];
      }
      score = sq - 2.0 / nn * sum_loo;
    }
    cands.push_back(a);
    scores.push_back(score);
  }
  return finalize(std::move(cands), std::move(scores));
}

LscvResult lscv_generic(const Sample& sample, const EstimatorFactory& factory,
                        std::span<const int> candidates) {
  require_observations(sample);
  if (candidates.empty()) throw std::invalid_argument("lscv: no candidates");
  const auto& obs = sample.values;
  const std::size_t n = obs.size();
  const auto& rule = gauss_legendre(512);

  std::vector<double> cands, scores;
  std::vector<double> reduced;
  for (int m : candidates) {
    const auto est = factory(obs, m);
    const double sq = rule.integrate([&est](double x) {
      const double v = est(x);
      return v * v;
    });
    double sum_loo = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      reduced.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) reduced.push_back(obs[j]);
      }
      sum_loo += factory(reduced, m)(obs[i]);
    }
    cands.push_back(m);
    scores.push_back(sq - 2.0 / static_cast<double>(n) * sum_loo);
  }
  return finalize(std::move(cands), std::move(scores));
}

} // namespace bernstein
