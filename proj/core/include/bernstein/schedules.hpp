#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace bernstein {

struct TheoryConstants; // asymptotics.hpp

//! Stepsize sequence gamma_n = min(1, gamma0 * n^(-alpha)).
//!
//! The clamp at 1 matters only for gamma0 = 1, n = 1, where gamma_1 = 1
//! exactly; the recursion then starts from f_1 = Z_1 regardless of f_0.
class StepsizeSchedule {
public:
  //! Requires gamma0 in (0, 1] and alpha in (1/2, 1].
  StepsizeSchedule(double gamma0, double alpha);

  //! gamma_n for n >= 1; throws std::domain_error for n = 0.
  double at(std::size_t n) const;

  double gamma0() const noexcept { return gamma0_; }
  double alpha() const noexcept { return alpha_; }

  //! xi = lim (n gamma_n)^(-1): 1/gamma0 when alpha = 1, otherwise 0.
  double xi() const noexcept { return alpha_ == 1.0 ? 1.0 / gamma0_ : 0.0; }

  //! Named presets "r1", "r2", "r3" -> gamma0 = 1, 8/9, 4/5 (alpha = 1).
  static StepsizeSchedule preset(std::string_view name);

private:
  double gamma0_;
  double alpha_;
};

//! Order sequence m_n = nearest even integer to c * n^a, floored at 2.
//! Even orders keep m_n/2 integral, which the two-order difference kernel
//! requires at every step.
class OrderSchedule {
public:
  //! Requires c >= 0 and a in [0, 1). c = 0 pins the schedule at m_n = 2;
  //! a = 0 gives a constant order (the equivalence oracles use it; the
  //! asymptotic theory needs a > 0).
  OrderSchedule(double c, double a);

  //! m_n for n >= 1 (even, >= 2); throws std::domain_error for n = 0.
  int at(std::size_t n) const;

  double constant() const noexcept { return c_; }
  double exponent() const noexcept { return a_; }

private:
  double c_;
  double a_;
};

//! Running product Pi_n = prod_{j<=n} (1 - gamma_j), the recursion's
//! forgetting factor. Pi_0 = 1; a gamma_1 = 1 step zeroes it permanently.
class PiProduct {
public:
  void update(double gamma);
  double value() const noexcept { return value_; }
  std::size_t count() const noexcept { return n_; }

private:
  double value_ = 1.0;
  std::size_t n_ = 0;
};

//! Numerical estimate of the regular-variation exponent of a positive
//! sequence: n * (1 - v_{n-1}/v_n) evaluated at n = N. Diagnostic only;
//! sequences with slowly varying factors (log n) converge slowly.
double gs_exponent_estimate(std::span<const double> seq);

//! Limit-condition diagnostic for a stepsize/order pair. Reports
//! lim (n gamma_n) against two candidate thresholds that circulate for the
//! same condition, min(2a, (2*alpha - a)/4) and min(a, (2*alpha + a)/4),
//! and flags a violation of either; it does not pick between them.
struct StepsizeLimitDiagnostic {
  double limit_n_gamma;      // +inf when alpha < 1
  double threshold_main;     // min(2a, (2*alpha - a)/4)
  double threshold_variant;  // min(a, (2*alpha + a)/4)
  bool ok_main;
  bool ok_variant;
};
StepsizeLimitDiagnostic check_stepsize_limit(const StepsizeSchedule& step,
                                             const OrderSchedule& orders);

//! Leading constant of the MISE-optimal order schedule (exponent 2/9) for
//! the recursive estimator driven by gamma_n = gamma0/n:
//!   2^(2/9) (gamma0 - 4/9)^(-2/9) [32 C2 / (C1 C3)]^(2/9).
//! Requires alpha = 1 and gamma0 > 4/9. Returns 0 when C2 = 0 (the order
//! schedule then clamps at m_n = 2).
double optimal_order_constant(const TheoryConstants& tc,
                              const StepsizeSchedule& step);

} // namespace bernstein
