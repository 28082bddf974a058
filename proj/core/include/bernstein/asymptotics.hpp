#pragma once

#include <cstddef>

#include "bernstein/densities.hpp"
#include "bernstein/estimators.hpp"
#include "bernstein/schedules.hpp"

namespace bernstein {

//! Interior variance weight (4 pi x (1-x))^(-1/2); singular at 0 and 1.
double psi_weight(double x);

//! First-order bias functional
//!   Delta1(x) = [ (1-2x) f'(x) + x(1-x) f''(x) ] / 2.
double delta1(const TrueDensity& d, double x);

//! Second-order bias functional
//!   Delta2(x) = (1 - 6x(1-x)) f''(x)/6 + 5 x(1-x)(1-2x) f'''(x)/12
//!             + x^2 (1-x)^2 f''''(x)/8.
double delta2(const TrueDensity& d, double x);

//! Interior variance constants of the two-order difference kernel family:
//!   lambda1(b) = { b^2 + b^(-1/2) - 2b sqrt(2/(b+1)) } / (1-b)^2,
//!   lambda2(b) = { b^2 + 1/b - 2 } / (1-b)^2.
//! lambda1(2) equals the universal constant c3; lambda2(2) = 5/2.
double lambda1(int b);
double lambda2(int b);

//! Integrated constants of a density, the inputs of every optimal order and
//! MISE expression.
struct TheoryConstants {
  double c1;  // int f * psi          (endpoint-singular integrand)
  double c2;  // int Delta2^2
  double c3;  // 1/sqrt(2) + 4 (1 - sqrt(2/3)), density-independent
  double c4;  // int Delta1^2
  double c5;  // int { -Delta1^2/(2f) + Delta2 }^2
  double c6;  // int { -Delta1^2/(2f) + Delta2 + f int Delta1^2/(2f) }^2
};

//! Computes c1..c6 by Gauss-Legendre quadrature. The psi singularity in c1
//! is removed by the substitution x = sin^2(theta/2). A 256- vs 512-node
//! cross-check guards convergence; disagreement throws std::runtime_error.
TheoryConstants theory_constants(const TrueDensity& d);

//! Two-term MISE expansion of a batch estimator at order m and sample size
//! n (variance term + integrated squared bias term):
//!   vitale:          c1 m^(1/2)/n            + c4 / m^2
//!   leblanc:         c1 c3 m^(1/2)/n         + 4 c2 / m^4
//!   generalized(b):  lambda1(b) c1 m^(1/2)/n + b^2 c2 / m^4
//!   multiplicative:  lambda1(b) c1 m^(1/2)/n + b^2 c5 / m^4
//!   normalized:      lambda1(b) c1 m^(1/2)/n + b^2 c6 / m^4
double theoretical_mise(EstimatorKind kind, const TheoryConstants& tc,
                        double n, double m, int b = 2);

//! Leading-term MISE of the recursive estimator under the given schedules,
//! piecewise in the order exponent a relative to 2 alpha / 9:
//!   a <  2 alpha/9: 4 c2 m_n^-4 / (1 - 2 a xi)^2
//!   a == 2 alpha/9: both terms
//!   a >  2 alpha/9: 2 c1 c3 gamma_n m_n^(1/2) / (4 - (2 alpha - a) xi)
//! Throws std::domain_error when the regime denominators are not positive,
//! naming the violated condition.
double theoretical_mise_recursive(const TheoryConstants& tc,
                                  const StepsizeSchedule& step,
                                  const OrderSchedule& orders, std::size_t n);

//! Closed-form MISE at the optimal order, per kind. gamma0 applies to the
//! recursive kind (requires gamma0 > 4/9), b to the two-order kinds.
double optimal_mise(EstimatorKind kind, const TheoryConstants& tc, double n,
                    int b = 2, double gamma0 = 1.0);

//! MISE-minimizing order, rounded to the nearest even integer >= 2; for the
//! b-ratio kinds additionally to the nearest multiple of lcm(2, b):
//!   vitale:         [4 c4 / c1]^(2/5) n^(2/5)
//!   leblanc:        [32 c2 / (c1 c3)]^(2/9) n^(2/9)
//!   generalized:    [b^2/lambda1(b) * 8 c2 / c1]^(2/9) n^(2/9)
//!   multiplicative: same with c5; normalized: same with c6
//!   recursive:      optimal_order_constant(tc, step) * n^(2/9)
int optimal_order(EstimatorKind kind, const TheoryConstants& tc, double n,
                  int b = 2, double gamma0 = 1.0);

struct PointwiseTheory {
  double bias;
  double variance;
  double mse;  // bias^2 + variance
};

//! Leading bias/variance/MSE of a batch estimator at x (interior variance
//! uses the psi form, the edges x = 0, 1 the m/n form).
PointwiseTheory pointwise_theory(EstimatorKind kind, const TheoryConstants& tc,
                                 const TrueDensity& d, double x, double n,
                                 double m, int b = 2);

//! Leading bias/variance/MSE of the recursive estimator at x. The case
//! split sits at a = 2 alpha/9 in the interior and at a = alpha/5 at the
//! edges; out-of-regime denominators throw std::domain_error.
PointwiseTheory pointwise_theory_recursive(const TheoryConstants& tc,
                                           const TrueDensity& d, double x,
                                           const StepsizeSchedule& step,
                                           const OrderSchedule& orders,
                                           std::size_t n);

//! Predicted limit distribution of the standardized pointwise error
//! gamma_n^(-1/2) m_n^(-1/4) (f_n(x) - f(x)) when
//! gamma_n^(-1/2) m_n^(-9/4) -> c:
//!   center = -2 c Delta2(x) / (1 - 2 a xi)
//!   var    =  2 c3 f(x) psi(x) / (4 - (2 alpha - a) xi)
//! Interior x only; requires a >= 2 alpha / 9 (otherwise c is infinite).
struct CltPrediction {
  double center;
  double stddev;
  double c;  // limit of gamma_n^(-1/2) m_n^(-9/4)
};
CltPrediction clt_prediction(const TheoryConstants& tc, const TrueDensity& d,
                             double x, const StepsizeSchedule& step,
                             const OrderSchedule& orders);

} // namespace bernstein
