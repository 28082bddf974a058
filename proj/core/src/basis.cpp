#include "bernstein/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bernstein {

double log_binomial(int m, int k) {
  if (m < 0 || k < 0 || k > m) {
    throw std::domain_error("log_binomial: need 0 <= k <= m, got m=" +
                            std::to_string(m) + " k=" + std::to_string(k));
  }
  return std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0);
}

double bernstein_basis(int m, int k, double x) {
  if (m < 0 || k < 0 || k > m) {
    throw std::domain_error("bernstein_basis: need 0 <= k <= m, got m=" +
                            std::to_string(m) + " k=" + std::to_string(k));
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("bernstein_basis: x=" + std::to_string(x) +
                            " outside [0,1]");
  }
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  if (x == 1.0) return k == m ? 1.0 : 0.0;
  if (m == 0) return 1.0;
  return std::exp(log_binomial(m, k) + k * std::log(x) +
                  (m - k) * std::log1p(-x));
}

std::vector<double> bernstein_row(int m, double x) {
  if (m < 0) throw std::domain_error("bernstein_row: negative degree");
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("bernstein_row: x outside [0,1]");
  }
  std::vector<double> row(static_cast<std::size_t>(m) + 1, 0.0);
  if (x == 0.0) {
    row[0] = 1.0;
    return row;
  }
  if (x == 1.0) {
    row[static_cast<std::size_t>(m)] = 1.0;
    return row;
  }
  const double lx = std::log(x);
  const double l1x = std::log1p(-x);
  for (int k = 0; k <= m; ++k) {
    row[static_cast<std::size_t>(k)] =
        std::exp(log_binomial(m, k) + k * lx + (m - k) * l1x);
  }
  return row;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> observations)
    : sorted_(std::move(observations)) {
  if (sorted_.empty()) {
    throw std::invalid_argument("EmpiricalCdf: empty sample");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double t) const noexcept {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

} // namespace bernstein
