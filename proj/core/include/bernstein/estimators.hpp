#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "bernstein/schedules.hpp"
#include "bernstein/transforms.hpp"

namespace bernstein {

//! A batch of observations already mapped to [0,1], carrying the transform
//! that produced them. Order matters for the recursive estimator.
struct Sample {
  std::vector<double> values;
  SupportTransform transform = SupportTransform::identity();
};

//! Bin index of an observation among the m half-open bins
//! (k/m, (k+1)/m], k = 0..m-1, with obs = 0 assigned to bin 0.
int bin_index(double obs, int m);

//! Single-observation smoothing kernel T(x) = m * b_k(m-1, x) with
//! k = bin_index(obs, m).
double t_kernel(double x, double obs, int m);

//! Two-order difference kernel Z(x) = 2 T_m(x) - T_{m/2}(x); m must be even.
//! Integrates to one in x for any obs; may be negative.
double z_kernel(double x, double obs, int m);

enum class EstimatorKind {
  recursive,
  vitale,
  leblanc,
  generalized,
  multiplicative,
  normalized,
};

std::string_view to_string(EstimatorKind kind);
EstimatorKind estimator_kind_from(std::string_view name);

//! Stochastic-approximation density estimator maintained on a fixed grid:
//!   f_n = (1 - gamma_n) f_{n-1} + gamma_n Z_n,   f_0 = 0.
//!
//! Each update costs O(grid) regardless of how many observations came
//! before, which is the point of the recursion. Values can dip below zero;
//! they are never truncated here (see truncate_and_renormalize).
//!
//! Single writer: updates must be serialized externally. Reads between
//! updates are safe.
class RecursiveEstimator {
public:
  //! Arbitrary strictly increasing abscissas in [0,1].
  RecursiveEstimator(StepsizeSchedule step, OrderSchedule orders,
                     std::vector<double> abscissas);

  //! Grid of q Gauss-Legendre nodes plus both endpoints, so that mass and
  //! squared-error integrals of polynomial degree < 2q are exact.
  static RecursiveEstimator on_quadrature_grid(StepsizeSchedule step,
                                               OrderSchedule orders,
                                               int q = 512);

  //! Consume one observation in [0,1]. Observations outside [0,1] are a
  //! domain error: apply a SupportTransform first.
  void update(double obs);

  void update(std::span<const double> observations);

  //! Linear interpolation between abscissas; exact at grid points; 0 when
  //! no observation has been consumed.
  double operator()(double x) const;

  //! Quadrature of the current values (only for on_quadrature_grid
  //! instances). Equals 1 - pi() exactly, up to rounding.
  double mass() const;

  //! Quadrature of (f_n - ref)^2 against values of ref at the grid nodes.
  double squared_error_vs(std::span<const double> ref_at_nodes) const;

  std::size_t count() const noexcept { return n_; }
  double pi() const noexcept { return pi_.value(); }
  const std::vector<double>& abscissas() const noexcept { return x_; }
  const std::vector<double>& values() const noexcept { return v_; }
  const StepsizeSchedule& stepsize() const noexcept { return step_; }
  const OrderSchedule& orders() const noexcept { return orders_; }

private:
  StepsizeSchedule step_;
  OrderSchedule orders_;
  std::vector<double> x_;
  std::vector<double> log_x_;    // log x_i (0 at endpoints, unused there)
  std::vector<double> log_1mx_;  // log(1 - x_i)
  std::vector<double> v_;
  std::vector<double> quad_w_;   // nonempty only for quadrature grids
  PiProduct pi_;
  std::size_t n_ = 0;
};

//! Bernstein-smoothed histogram estimator at a single order m:
//!   f(x) = m sum_k w_k b_k(m-1, x),  w_k = (bin k count)/n.
//! Nonnegative and integrates to one for any sample.
class VitaleEstimator {
public:
  VitaleEstimator(std::span<const double> observations, int m);

  double operator()(double x) const;
  int order() const noexcept { return m_; }
  const std::vector<double>& weights() const noexcept { return w_; }

private:
  int m_;
  std::vector<double> w_;
  // nonzero bins only, with precomputed log binomials of order m-1
  std::vector<int> nz_k_;
  std::vector<double> nz_w_;
  std::vector<double> nz_logc_;
};

//! The batch estimator family behind one evaluation interface.
//! leblanc is generalized with b = 2; multiplicative and normalized take the
//! guard epsilon. Immutable after construction, safe to share.
class BatchEstimator {
public:
  static BatchEstimator vitale(const Sample& sample, int m);
  static BatchEstimator leblanc(const Sample& sample, int m);
  static BatchEstimator generalized(const Sample& sample, int m, int b);
  static BatchEstimator multiplicative(const Sample& sample, int m, int b,
                                       double eps = 1e-5);
  static BatchEstimator normalized(const Sample& sample, int m, int b,
                                   double eps = 1e-5);

  static BatchEstimator make(EstimatorKind kind, const Sample& sample, int m,
                             int b = 2, double eps = 1e-5);

  double operator()(double x) const;

  EstimatorKind kind() const noexcept { return kind_; }
  int order() const noexcept { return m_; }
  int ratio() const noexcept { return b_; }
  double epsilon() const noexcept { return eps_; }

private:
  BatchEstimator(EstimatorKind kind, const Sample& sample, int m, int b,
                 double eps);

  double raw(double x) const;

  EstimatorKind kind_;
  int m_;
  int b_;
  double eps_;
  std::vector<VitaleEstimator> parts_;  // order m, and order m/b when used
  double normalization_ = 1.0;
};

//! Post-hoc fix for signed estimates: clip below zero and rescale to unit
//! mass (quadrature with q nodes). Returns the wrapped evaluator.
std::function<double(double)> truncate_and_renormalize(
    std::function<double(double)> f, int q = 512);

} // namespace bernstein
