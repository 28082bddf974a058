#pragma once

#include <cstddef>
#include <vector>

namespace bernstein {

//! log of the binomial coefficient C(m, k), computed via lgamma.
double log_binomial(int m, int k);

//! Bernstein basis polynomial b_k(m, x) = C(m,k) x^k (1-x)^(m-k).
//!
//! Evaluated in log space so that orders up to at least 10^4 are safe from
//! overflow. The endpoints are handled exactly: b_k(m,0) = [k == 0] and
//! b_k(m,1) = [k == m]. Degree m = 0 is the constant 1.
//! Throws std::domain_error for k outside [0, m] or x outside [0, 1].
double bernstein_basis(int m, int k, double x);

//! All m+1 basis values b_0(m,x), ..., b_m(m,x).
//! The row sums to 1 (partition of unity) up to rounding.
std::vector<double> bernstein_row(int m, double x);

//! Right-continuous empirical distribution function F_n(t) = #{X_i <= t} / n.
//! Duplicate observations are allowed and counted with multiplicity.
class EmpiricalCdf {
public:
  explicit EmpiricalCdf(std::vector<double> observations);

  double operator()(double t) const noexcept;
  std::size_t size() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted() const noexcept { return sorted_; }

private:
  std::vector<double> sorted_;
};

} // namespace bernstein
