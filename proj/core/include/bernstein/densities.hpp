#pragma once

#include <array>
#include <functional>
#include <vector>

namespace bernstein {

//! Dense polynomial in ascending-power coefficients; enough machinery for
//! the beta-family densities and their derivatives.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  double operator()(double x) const noexcept;
  Polynomial derivative() const;
  const std::vector<double>& coefficients() const noexcept { return c_; }

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(double s);

private:
  std::vector<double> c_{0.0};
};

//! A density on [0,1] together with its first four derivatives.
//!
//! Construction validates that f integrates to one and is nonnegative on a
//! quadrature grid. Derivatives are either supplied analytically or built by
//! finite differences (from_function).
class TrueDensity {
public:
  using Fn = std::function<double(double)>;

  TrueDensity(Fn f, Fn d1, Fn d2, Fn d3, Fn d4);

  //! Finite-difference derivatives for a density given only as a function.
  //! First and second derivatives use five-point O(h^4) central stencils
  //! (step 1e-3); third and fourth use nine-point O(h^6) stencils (steps
  //! 4e-3 and 8e-3), the cheapest rules whose truncation and rounding both
  //! stay below 1e-6 of the derivative's sup on peaked densities. Stencils
  //! shift inward near the endpoints.
  static TrueDensity from_function(Fn f);

  static TrueDensity uniform();
  static TrueDensity from_polynomial(const Polynomial& p);

  double operator()(double x) const { return f_(x); }
  //! k-th derivative, k in [0, 4].
  double deriv(int k, double x) const;

private:
  std::array<Fn, 5> fs_;
  Fn f_;
};

} // namespace bernstein
