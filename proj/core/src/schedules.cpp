#include "bernstein/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bernstein/asymptotics.hpp"

namespace bernstein {

StepsizeSchedule::StepsizeSchedule(double gamma0, double alpha)
    : gamma0_(gamma0), alpha_(alpha) {
  if (!(gamma0 > 0.0 && gamma0 <= 1.0)) {
    throw std::invalid_argument("StepsizeSchedule: gamma0 must be in (0,1]");
  }
  if (!(alpha > 0.5 && alpha <= 1.0)) {
    throw std::invalid_argument("StepsizeSchedule: alpha must be in (1/2,1]");
  }
}

double StepsizeSchedule::at(std::size_t n) const {
  if (n == 0) throw std::domain_error("StepsizeSchedule: n must be >= 1");
  return std::min(1.0, gamma0_ * std::pow(static_cast<double>(n), -alpha_));
}

StepsizeSchedule StepsizeSchedule::preset(std::string_view name) {
  if (name == "r1") return {1.0, 1.0};
  if (name == "r2") return {8.0 / 9.0, 1.0};
  if (name == "r3") return {4.0 / 5.0, 1.0};
  throw std::invalid_argument("StepsizeSchedule: unknown preset '" +
                              std::string(name) + "' (expected r1|r2|r3)");
}

OrderSchedule::OrderSchedule(double c, double a) : c_(c), a_(a) {
  if (!(c >= 0.0)) {
    throw std::invalid_argument("OrderSchedule: c must be >= 0");
  }
  if (!(a >= 0.0 && a < 1.0)) {
    throw std::invalid_argument("OrderSchedule: a must be in [0,1)");
  }
}

int OrderSchedule::at(std::size_t n) const {
  if (n == 0) throw std::domain_error("OrderSchedule: n must be >= 1");
  const double v = c_ * std::pow(static_cast<double>(n), a_);
  const long long even = 2 * std::llround(0.5 * v);
  return static_cast<int>(std::max(2LL, even));
}

void PiProduct::update(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::domain_error("PiProduct: gamma outside [0,1]");
  }
  value_ *= 1.0 - gamma;
  ++n_;
}

double gs_exponent_estimate(std::span<const double> seq) {
  if (seq.size() < 10) {
    throw std::domain_error("gs_exponent_estimate: need at least 10 terms");
  }
  for (double v : seq) {
    if (!(v > 0.0)) {
      throw std::domain_error("gs_exponent_estimate: terms must be positive");
    }
  }
  const double n = static_cast<double>(seq.size());
  return n * (1.0 - seq[seq.size() - 2] / seq[seq.size() - 1]);
}

StepsizeLimitDiagnostic check_stepsize_limit(const StepsizeSchedule& step,
                                             const OrderSchedule& orders) {
  StepsizeLimitDiagnostic d{};
  d.limit_n_gamma = step.alpha() == 1.0
                        ? step.gamma0()
                        : std::numeric_limits<double>::infinity();
  const double a = orders.exponent();
  const double alpha = step.alpha();
  d.threshold_main = std::min(2.0 * a, (2.0 * alpha - a) / 4.0);
  d.threshold_variant = std::min(a, (2.0 * alpha + a) / 4.0);
  d.ok_main = d.limit_n_gamma > d.threshold_main;
  d.ok_variant = d.limit_n_gamma > d.threshold_variant;
  return d;
}

double optimal_order_constant(const TheoryConstants& tc,
                              const StepsizeSchedule& step) {
  if (step.alpha() != 1.0) {
    throw std::domain_error(
        "optimal_order_constant: defined for alpha = 1 schedules");
  }
  const double g0 = step.gamma0();
  if (!(g0 > 4.0 / 9.0)) {
    throw std::domain_error(
        "optimal_order_constant: requires gamma0 > 4/9, got " +
        std::to_string(g0));
  }
  if (tc.c2 == 0.0) return 0.0;
  return std::pow(2.0, 2.0 / 9.0) * std::pow(g0 - 4.0 / 9.0, -2.0 / 9.0) *
         std::pow(32.0 * tc.c2 / (tc.c1 * tc.c3), 2.0 / 9.0);
}

} // namespace bernstein
