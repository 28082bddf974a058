#include "bernstein/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bernstein/basis.hpp"
#include "bernstein/quadrature.hpp"

namespace bernstein {

int bin_index(double obs, int m) {
  if (m < 1) throw std::domain_error("bin_index: m must be >= 1");
  if (!(obs >= 0.0 && obs <= 1.0)) {
    throw std::domain_error("bin_index: observation outside [0,1]");
  }
  if (obs == 0.0) return 0;
  const int k = static_cast<int>(std::ceil(m * obs)) - 1;
  return std::clamp(k, 0, m - 1);
}

double t_kernel(double x, double obs, int m) {
  return m * bernstein_basis(m - 1, bin_index(obs, m), x);
}

double z_kernel(double x, double obs, int m) {
  if (m < 2 || m % 2 != 0) {
    throw std::domain_error("z_kernel: m must be even and >= 2");
  }
  return 2.0 * t_kernel(x, obs, m) - t_kernel(x, obs, m / 2);
}

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::recursive: return "recursive";
    case EstimatorKind::vitale: return "vitale";
    case EstimatorKind::leblanc: return "leblanc";
    case EstimatorKind::generalized: return "generalized";
    case EstimatorKind::multiplicative: return "multiplicative";
    case EstimatorKind::normalized: return "normalized";
  }
  return "?";
}

EstimatorKind estimator_kind_from(std::string_view name) {
  if (name == "recursive") return EstimatorKind::recursive;
  if (name == "vitale") return EstimatorKind::vitale;
  if (name == "leblanc") return EstimatorKind::leblanc;
  if (name == "generalized") return EstimatorKind::generalized;
  if (name == "multiplicative") return EstimatorKind::multiplicative;
  if (name == "normalized") return EstimatorKind::normalized;
  throw std::invalid_argument("unknown estimator kind '" + std::string(name) +
                              "'");
}

RecursiveEstimator::RecursiveEstimator(StepsizeSchedule step,
                                       OrderSchedule orders,
                                       std::vector<double> abscissas)
    : step_(step), orders_(orders), x_(std::move(abscissas)) {
  if (x_.empty()) {
    throw std::invalid_argument("RecursiveEstimator: empty grid");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!(x_[i] >= 0.0 && x_[i] <= 1.0)) {
      throw std::invalid_argument("RecursiveEstimator: abscissa outside [0,1]");
    }
    if (i > 0 && !(x_[i] > x_[i - 1])) {
      throw std::invalid_argument(
          "RecursiveEstimator: abscissas must be strictly increasing");
    }
  }
  v_.assign(x_.size(), 0.0);
  log_x_.resize(x_.size());
  log_1mx_.resize(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) {
    log_x_[i] = x_[i] > 0.0 ? std::log(x_[i]) : 0.0;
    log_1mx_[i] = x_[i] < 1.0 ? std::log1p(-x_[i]) : 0.0;
  }
}

RecursiveEstimator RecursiveEstimator::on_quadrature_grid(
    StepsizeSchedule step, OrderSchedule orders, int q) {
  const auto& rule = gauss_legendre(q);
  std::vector<double> grid;
  grid.reserve(rule.nodes.size() + 2);
  grid.push_back(0.0);
  grid.insert(grid.end(), rule.nodes.begin(), rule.nodes.end());
  grid.push_back(1.0);
  RecursiveEstimator est(step, orders, std::move(grid));
  est.quad_w_ = rule.weights;
  return est;
}

void RecursiveEstimator::update(double obs) {
  if (!(obs >= 0.0 && obs <= 1.0)) {
    throw std::domain_error(
        "RecursiveEstimator: observation outside [0,1]; apply a "
        "SupportTransform before updating");
  }
  ++n_;
  const int m = orders_.at(n_);
  const double gamma = step_.at(n_);
  const int h = m / 2;
  const int km = bin_index(obs, m);
  const int kh = bin_index(obs, h);
  // Z(x) = 2 m b_km(m-1, x) - h b_kh(h-1, x), expanded with the grid's
  // precomputed logs; endpoints handled exactly.
  const double logc_m = log_binomial(m - 1, km);
  const double logc_h = log_binomial(h - 1, kh);
  const double one_minus = 1.0 - gamma;
  const std::size_t size = x_.size();
  for (std::size_t i = 0; i < size; ++i) {
    double z;
    if (x_[i] == 0.0) {
      z = 2.0 * m * (km == 0 ? 1.0 : 0.0) - h * (kh == 0 ? 1.0 : 0.0);
    } else if (x_[i] == 1.0) {
      z = 2.0 * m * (km == m - 1 ? 1.0 : 0.0) - h * (kh == h - 1 ? 1.0 : 0.0);
    } else {
      const double bm =
          std::exp(logc_m + km * log_x_[i] + (m - 1 - km) * log_1mx_[i]);
      const double bh =
          h == 1 ? 1.0
                 : std::exp(logc_h + kh * log_x_[i] + (h - 1 - kh) * log_1mx_[i]);
      z = 2.0 * m * bm - h * bh;
    }
    v_[i] = one_minus * v_[i] + gamma * z;
  }
  pi_.update(gamma);
}

void RecursiveEstimator::update(std::span<const double> observations) {
  for (double obs : observations) update(obs);
}

double RecursiveEstimator::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("RecursiveEstimator: evaluation outside [0,1]");
  }
  if (x <= x_.front()) return v_.front();
  if (x >= x_.back()) return v_.back();
  const auto it = std::lower_bound(x_.begin(), x_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - x_.begin());
  if (x_[j] == x) return v_[j];
  const double t = (x - x_[j - 1]) / (x_[j] - x_[j - 1]);
  return (1.0 - t) * v_[j - 1] + t * v_[j];
}

double RecursiveEstimator::mass() const {
  if (quad_w_.empty()) {
    throw std::logic_error(
        "RecursiveEstimator::mass: not a quadrature grid instance");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < quad_w_.size(); ++i) s += quad_w_[i] * v_[i + 1];
  return s;
}

double RecursiveEstimator::squared_error_vs(
    std::span<const double> ref_at_nodes) const {
  if (quad_w_.empty()) {
    throw std::logic_error(
        "RecursiveEstimator::squared_error_vs: not a quadrature grid instance");
  }
  if (ref_at_nodes.size() != quad_w_.size()) {
    throw std::invalid_argument(
        "RecursiveEstimator::squared_error_vs: size mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < quad_w_.size(); ++i) {
    const double d = v_[i + 1] - ref_at_nodes[i];
    s += quad_w_[i] * d * d;
  }
  return s;
}

VitaleEstimator::VitaleEstimator(std::span<const double> observations, int m)
    : m_(m) {
  if (m < 1) throw std::invalid_argument("VitaleEstimator: m must be >= 1");
  if (observations.empty()) {
    throw std::invalid_argument("VitaleEstimator: empty sample");
  }
  w_.assign(static_cast<std::size_t>(m), 0.0);
  const double inv_n = 1.0 / static_cast<double>(observations.size());
  for (double obs : observations) {
    w_[static_cast<std::size_t>(bin_index(obs, m))] += inv_n;
  }
  for (int k = 0; k < m; ++k) {
    const double wk = w_[static_cast<std::size_t>(k)];
    if (wk != 0.0) {
      nz_k_.push_back(k);
      nz_w_.push_back(wk);
      nz_logc_.push_back(log_binomial(m - 1, k));
    }
  }
}

double VitaleEstimator::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("VitaleEstimator: evaluation outside [0,1]");
  }
  if (x == 0.0) return m_ * (nz_k_.front() == 0 ? nz_w_.front() : 0.0);
  if (x == 1.0) return m_ * (nz_k_.back() == m_ - 1 ? nz_w_.back() : 0.0);
  const double lx = std::log(x), l1x = std::log1p(-x);
  double s = 0.0;
  for (std::size_t i = 0; i < nz_k_.size(); ++i) {
    const int k = nz_k_[i];
    s += nz_w_[i] * std::exp(nz_logc_[i] + k * lx + (m_ - 1 - k) * l1x);
  }
  return m_ * s;
}

BatchEstimator::BatchEstimator(EstimatorKind kind, const Sample& sample, int m,
                               int b, double eps)
    : kind_(kind), m_(m), b_(b), eps_(eps) {
  if (kind == EstimatorKind::recursive) {
    throw std::invalid_argument(
        "BatchEstimator: the recursive kind has its own class");
  }
  if (kind != EstimatorKind::vitale) {
    if (b < 2) throw std::invalid_argument("BatchEstimator: b must be >= 2");
    if (m % b != 0) {
      throw std::invalid_argument("BatchEstimator: order " + std::to_string(m) +
                                  " not divisible by b = " + std::to_string(b));
    }
  }
  if ((kind == EstimatorKind::multiplicative ||
       kind == EstimatorKind::normalized) &&
      !(eps > 0.0)) {
    throw std::invalid_argument("BatchEstimator: epsilon must be positive");
  }
  parts_.emplace_back(sample.values, m);
  if (kind != EstimatorKind::vitale) {
    parts_.emplace_back(sample.values, m / b);
  }
  if (kind == EstimatorKind::normalized) {
    const auto& rule = gauss_legendre(512);
    normalization_ = rule.integrate([this](double x) { return raw(x); });
    if (!(normalization_ > 0.0)) {
      throw std::invalid_argument(
          "BatchEstimator: normalization integral is not positive");
    }
  }
}

double BatchEstimator::raw(double x) const {
  switch (kind_) {
    case EstimatorKind::vitale:
      return parts_[0](x);
    case EstimatorKind::leblanc:
    case EstimatorKind::generalized: {
      const double w = static_cast<double>(b_);
      return w / (w - 1.0) * parts_[0](x) - 1.0 / (w - 1.0) * parts_[1](x);
    }
    case EstimatorKind::multiplicative:
    case EstimatorKind::normalized: {
      const double w = static_cast<double>(b_);
      const double hi = parts_[0](x);
      if (hi == 0.0) return 0.0;
      const double lo = parts_[1](x) + eps_;
      return std::pow(hi, w / (w - 1.0)) * std::pow(lo, -1.0 / (w - 1.0));
    }
    case EstimatorKind::recursive:
      break;
  }
  throw std::logic_error("BatchEstimator: bad kind");
}

double BatchEstimator::operator()(double x) const {
  const double v = raw(x);
  return kind_ == EstimatorKind::normalized ? v / normalization_ : v;
}

BatchEstimator BatchEstimator::vitale(const Sample& sample, int m) {
  return BatchEstimator(EstimatorKind::vitale, sample, m, 1, 0.0);
}
BatchEstimator BatchEstimator::leblanc(const Sample& sample, int m) {
  return BatchEstimator(EstimatorKind::leblanc, sample, m, 2, 0.0);
}
BatchEstimator BatchEstimator::generalized(const Sample& sample, int m, int b) {
  return BatchEstimator(EstimatorKind::generalized, sample, m, b, 0.0);
}
BatchEstimator BatchEstimator::multiplicative(const Sample& sample, int m,
                                              int b, double eps) {
  return BatchEstimator(EstimatorKind::multiplicative, sample, m, b, eps);
}
BatchEstimator BatchEstimator::normalized(const Sample& sample, int m, int b,
                                          double eps) {
  return BatchEstimator(EstimatorKind::normalized, sample, m, b, eps);
}

BatchEstimator BatchEstimator::make(EstimatorKind kind, const Sample& sample,
                                    int m, int b, double eps) {
  switch (kind) {
    case EstimatorKind::vitale: return vitale(sample, m);
    case EstimatorKind::leblanc: return leblanc(sample, m);
    case EstimatorKind::generalized: return generalized(sample, m, b);
    case EstimatorKind::multiplicative:
      return multiplicative(sample, m, b, eps);
    case EstimatorKind::normalized: return normalized(sample, m, b, eps);
    case EstimatorKind::recursive: break;
  }
  throw std::invalid_argument("BatchEstimator::make: bad kind");
}

std::function<double(double)> truncate_and_renormalize(
    std::function<double(double)> f, int q) {
  const auto& rule = gauss_legendre(q);
  const double mass =
      rule.integrate([&f](double x) { return std::max(0.0, f(x)); });
  if (!(mass > 0.0)) {
    throw std::invalid_argument(
        "truncate_and_renormalize: nonpositive mass after truncation");
  }
  return [f = std::move(f), mass](double x) {
    return std::max(0.0, f(x)) / mass;
  };
}

} // namespace bernstein
