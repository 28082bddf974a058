#pragma once

#include <string_view>

namespace bernstein {

//! Change of variable mapping a declared support onto [0,1], plus the
//! Jacobian-weighted pullback of a unit-interval density estimate.
//!
//! Kinds:
//!   bounded(lo, hi):  y = (x - lo)/(hi - lo)
//!   real_line:        y = 1/2 + atan(x)/pi
//!   half_line:        y = x/(1 + x)
//!   identity:         y = x (support already [0,1])
class SupportTransform {
public:
  enum class Kind { bounded, real_line, half_line, identity };

  static SupportTransform bounded(double lo, double hi);
  static SupportTransform real_line() { return SupportTransform(Kind::real_line); }
  static SupportTransform half_line() { return SupportTransform(Kind::half_line); }
  static SupportTransform identity() { return SupportTransform(Kind::identity); }

  //! Parse a CLI-style spec: "lo,hi" | "real" | "halfline" | "unit".
  static SupportTransform parse(std::string_view spec);

  //! Map x (in the declared support) into [0,1]. Observations exactly at a
  //! bounded support's endpoints map to 0 or 1 and are accepted.
  double forward(double x) const;

  //! Inverse of forward on (0,1) (and [0,1] for bounded kinds).
  double backward(double u) const;

  //! d forward/dx, the density pullback weight.
  double jacobian(double x) const;

  //! Pull a density estimate g on [0,1] back to the original scale:
  //! f(x) = jacobian(x) * g(forward(x)). Signed g is passed through.
  template <class G>
  double backward_density(G&& g, double x) const {
    return jacobian(x) * g(forward(x));
  }

  Kind kind() const noexcept { return kind_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

private:
  explicit SupportTransform(Kind kind, double lo = 0.0, double hi = 1.0)
      : kind_(kind), lo_(lo), hi_(hi) {}

  Kind kind_;
  double lo_;
  double hi_;
};

} // namespace bernstein
