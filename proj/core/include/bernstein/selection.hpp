#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bernstein/estimators.hpp"
#include "bernstein/schedules.hpp"

namespace bernstein {

//! Least-squares cross-validation scores over a candidate grid.
//! selected attains the minimum score; ties break toward the smaller
//! candidate. No randomness: identical inputs give identical results.
struct LscvResult {
  std::vector<double> candidates;  // orders, or exponents for the recursive kind
  std::vector<double> scores;
  std::size_t argmin_index = 0;
  double selected = 0.0;
};

//! Default order grid: even orders 2..2n (b <= 2), multiples of b up to 2n
//! otherwise.
std::vector<int> default_order_candidates(std::size_t n, int b = 2);

//! Default exponent grid for the recursive kind: 0.10, 0.11, ..., 0.99
//! (unit leading constant).
std::vector<double> default_exponent_candidates();

//! LSCV for the single-order estimator via the closed leave-one-out form
//!   score(m) = int f^2 - 2/(n-1) [ sum_i f(X_i) - m/n sum_i b_{k_i}(m-1, X_i) ].
//! The square integral is an exact Gauss-Legendre quadrature.
LscvResult lscv_vitale(const Sample& sample, std::span<const int> candidates);

//! LSCV for the two-order difference estimator with ratio b; closed
//! leave-one-out form with the b/(b-1), 1/(b-1) weights. Candidates must be
//! divisible by b.
LscvResult lscv_generalized(const Sample& sample, int b,
                            std::span<const int> candidates);

//! LSCV for the recursive estimator over order-schedule exponents
//! (m_i = round-to-even(i^a)). With gamma_n = 1/n the closed leave-one-out
//! form applies; any other stepsize falls back to deletion refits.
LscvResult lscv_recursive(const Sample& sample, const StepsizeSchedule& step,
                          std::span<const double> exponent_candidates);

//! Factory signature: build an evaluable estimate from observations at
//! order m.
using EstimatorFactory = std::function<std::function<double(double)>(
    std::span<const double>, int)>;

//! Generic LSCV by explicit leave-one-out refits (n refits per candidate);
//! the route for estimators without a closed form. The square integral uses
//! a fixed 512-node rule.
LscvResult lscv_generic(const Sample& sample, const EstimatorFactory& factory,
                        std::span<const int> candidates);

} // namespace bernstein
