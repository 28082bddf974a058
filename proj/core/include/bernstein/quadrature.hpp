#pragma once

#include <functional>
#include <vector>

namespace bernstein {

//! Gauss-Legendre rule with nodes mapped to [lo, hi].
//! An n-point rule integrates polynomials up to degree 2n-1 exactly.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

//! Shared n-point Gauss-Legendre rule on [0,1] (cached, thread-safe).
const QuadratureRule& gauss_legendre(int n);

//! Fresh n-point Gauss-Legendre rule on [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

//! Adaptive Simpson integration; used where a fixed rule is not appropriate
//! (pullback integrals over unbounded supports, independent cross-checks).
double adaptive_simpson(const std::function<double(double)>& f, double lo,
                        double hi, double tol = 1e-10, int max_depth = 40);

} // namespace bernstein
