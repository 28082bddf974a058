#include "bernstein/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bernstein/quadrature.hpp"

namespace bernstein {

namespace {

constexpr double kC3 = 1.4411204574756434;  // 1/sqrt(2) + 4(1 - sqrt(2/3))

double pow29(double v) { return std::pow(v, 2.0 / 9.0); }

int round_to_multiple(double v, int step, int minimum) {
  const long long r = step * std::llround(v / step);
  return static_cast<int>(std::max(static_cast<long long>(minimum), r));
}

} // namespace

double psi_weight(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw std::domain_error("psi_weight: x must be in (0,1)");
  }
  return 1.0 / std::sqrt(4.0 * std::numbers::pi * x * (1.0 - x));
}

double delta1(const TrueDensity& d, double x) {
  return 0.5 * ((1.0 - 2.0 * x) * d.deriv(1, x) +
                x * (1.0 - x) * d.deriv(2, x));
}

double delta2(const TrueDensity& d, double x) {
  const double u = x * (1.0 - x);
  return (1.0 - 6.0 * u) * d.deriv(2, x) / 6.0 +
         5.0 / 12.0 * u * (1.0 - 2.0 * x) * d.deriv(3, x) +
         0.125 * u * u * d.deriv(4, x);
}

double lambda1(int b) {
  if (b < 2) throw std::domain_error("lambda1: b must be >= 2");
  const double bb = b;
  return (bb * bb + 1.0 / std::sqrt(bb) - 2.0 * bb * std::sqrt(2.0 / (bb + 1.0))) /
         ((1.0 - bb) * (1.0 - bb));
}

double lambda2(int b) {
  if (b < 2) throw std::domain_error("lambda2: b must be >= 2");
  const double bb = b;
  return (bb * bb + 1.0 / bb - 2.0) / ((1.0 - bb) * (1.0 - bb));
}

namespace {

struct ConstantIntegrands {
  const TrueDensity& d;

  double c1(int q) const {
    // x = sin^2(theta/2) turns  int f psi dx  into
    // (4 pi)^(-1/2) int_0^pi f(sin^2(theta/2)) dtheta, with no singularity.
    const QuadratureRule rule = gauss_legendre(q, 0.0, std::numbers::pi);
    const double integral = rule.integrate([this](double th) {
      const double s = std::sin(0.5 * th);
      return d(s * s);
    });
    return integral / std::sqrt(4.0 * std::numbers::pi);
  }
  double c2(int q) const {
    return gauss_legendre(q, 0.0, 1.0).integrate([this](double x) {
      const double v = delta2(d, x);
      return v * v;
    });
  }
  double c4(int q) const {
    return gauss_legendre(q, 0.0, 1.0).integrate([this](double x) {
      const double v = delta1(d, x);
      return v * v;
    });
  }
  double c5(int q) const {
    return gauss_legendre(q, 0.0, 1.0).integrate([this](double x) {
      const double d1 = delta1(d, x);
      const double v = -d1 * d1 / (2.0 * d(x)) + delta2(d, x);
      return v * v;
    });
  }
  double c6(int q) const {
    const double inner = gauss_legendre(q, 0.0, 1.0).integrate([this](double x) {
      const double d1 = delta1(d, x);
      return d1 * d1 / (2.0 * d(x));
    });
    return gauss_legendre(q, 0.0, 1.0).integrate([this, inner](double x) {
      const double d1 = delta1(d, x);
      const double v = -d1 * d1 / (2.0 * d(x)) + delta2(d, x) + d(x) * inner;
      return v * v;
    });
  }
};

double converged(double lo, double hi, const char* name) {
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  if (!std::isfinite(lo) || !std::isfinite(hi) ||
      std::abs(hi - lo) > 1e-7 * scale) {
    throw std::runtime_error(std::string("theory_constants: quadrature for ") +
                             name + " did not converge (256 nodes: " +
                             std::to_string(lo) + ", 512 nodes: " +
                             std::to_string(hi) + ")");
  }
  return hi;
}

} // namespace

TheoryConstants theory_constants(const TrueDensity& d) {
  const ConstantIntegrands ci{d};
  TheoryConstants tc{};
  tc.c1 = converged(ci.c1(256), ci.c1(512), "c1");
  tc.c2 = converged(ci.c2(256), ci.c2(512), "c2");
  tc.c3 = kC3;
  tc.c4 = converged(ci.c4(256), ci.c4(512), "c4");
  tc.c5 = converged(ci.c5(256), ci.c5(512), "c5");
  tc.c6 = converged(ci.c6(256), ci.c6(512), "c6");
  return tc;
}

namespace {

// variance-term coefficient and bias-term coefficient of the two-term MISE
void mise_terms(EstimatorKind kind, const TheoryConstants& tc, int b,
                double& var_coef, double& bias_coef, int& bias_power) {
  switch (kind) {
    case EstimatorKind::vitale:
      var_coef = tc.c1;
      bias_coef = tc.c4;
      bias_power = 2;
      return;
    case EstimatorKind::leblanc:
      var_coef = tc.c1 * tc.c3;
      bias_coef = 4.0 * tc.c2;
      bias_power = 4;
      return;
    case EstimatorKind::generalized:
      var_coef = lambda1(b) * tc.c1;
      bias_coef = static_cast<double>(b) * b * tc.c2;
      bias_power = 4;
      return;
    case EstimatorKind::multiplicative:
      var_coef = lambda1(b) * tc.c1;
      bias_coef = static_cast<double>(b) * b * tc.c5;
      bias_power = 4;
      return;
    case EstimatorKind::normalized:
      var_coef = lambda1(b) * tc.c1;
      bias_coef = static_cast<double>(b) * b * tc.c6;
      bias_power = 4;
      return;
    case EstimatorKind::recursive:
      break;
  }
  throw std::invalid_argument(
      "theoretical_mise: use theoretical_mise_recursive for the recursive kind");
}

} // namespace

double theoretical_mise(EstimatorKind kind, const TheoryConstants& tc,
                        double n, double m, int b) {
  if (!(n > 0.0) || !(m > 0.0)) {
    throw std::domain_error("theoretical_mise: n and m must be positive");
  }
  double var_coef = 0.0, bias_coef = 0.0;
  int bias_power = 0;
  mise_terms(kind, tc, b, var_coef, bias_coef, bias_power);
  return var_coef * std::sqrt(m) / n + bias_coef * std::pow(m, -bias_power);
}

double theoretical_mise_recursive(const TheoryConstants& tc,
                                  const StepsizeSchedule& step,
                                  const OrderSchedule& orders, std::size_t n) {
  const double a = orders.exponent();
  const double alpha = step.alpha();
  const double xi = step.xi();
  const double m_n = orders.at(n);
  const double gamma_n = step.at(n);

  const double bias_denom = 1.0 - 2.0 * a * xi;
  const double var_denom = 4.0 - (2.0 * alpha - a) * xi;
  const double threshold = 2.0 * alpha / 9.0;

  const auto bias_term = [&] {
    if (!(bias_denom > 0.0)) {
      throw std::domain_error(
          "theoretical_mise_recursive: 1 - 2 a xi <= 0 (got " +
          std::to_string(bias_denom) + ")");
    }
    return 4.0 * tc.c2 / (bias_denom * bias_denom) * std::pow(m_n, -4.0);
  };
  const auto var_term = [&] {
    if (!(var_denom > 0.0)) {
      throw std::domain_error(
          "theoretical_mise_recursive: 4 - (2 alpha - a) xi <= 0 (got " +
          std::to_string(var_denom) + ")");
    }
    return 2.0 * tc.c1 * tc.c3 / var_denom * gamma_n * std::sqrt(m_n);
  };

  if (a < threshold) return bias_term();
  if (a > threshold) return var_term();
  return bias_term() + var_term();
}

double optimal_mise(EstimatorKind kind, const TheoryConstants& tc, double n,
                    int b, double gamma0) {
  if (!(n > 0.0)) throw std::domain_error("optimal_mise: n must be positive");
  switch (kind) {
    case EstimatorKind::vitale:
      return 1.25 * std::pow(std::pow(tc.c1, 4) * tc.c4, 0.2) *
             std::pow(n, -0.8);
    case EstimatorKind::leblanc:
      return 9.0 / 8.0 *
             std::pow(32.0 * std::pow(tc.c1, 8) * tc.c2 * std::pow(tc.c3, 8),
                      1.0 / 9.0) *
             std::pow(n, -8.0 / 9.0);
    case EstimatorKind::generalized:
    case EstimatorKind::multiplicative:
    case EstimatorKind::normalized: {
      const double cx = kind == EstimatorKind::generalized
                            ? tc.c2
                            : (kind == EstimatorKind::multiplicative ? tc.c5
                                                                     : tc.c6);
      return pow29(b * std::pow(lambda1(b), 4)) * 9.0 / 8.0 *
             std::pow(8.0 * std::pow(tc.c1, 8) * cx, 1.0 / 9.0) *
             std::pow(n, -8.0 / 9.0);
    }
    case EstimatorKind::recursive: {
      if (!(gamma0 > 4.0 / 9.0)) {
        throw std::domain_error("optimal_mise: recursive kind requires "
                                "gamma0 > 4/9");
      }
      return 9.0 / 8.0 *
             std::pow(8.0 * std::pow(tc.c1, 8) * std::pow(tc.c3, 8) * tc.c2,
                      1.0 / 9.0) *
             gamma0 * gamma0 /
             (std::pow(2.0, 6.0 / 9.0) *
              std::pow(gamma0 - 4.0 / 9.0, 10.0 / 9.0)) *
             std::pow(n, -8.0 / 9.0);
    }
  }
  throw std::invalid_argument("optimal_mise: bad kind");
}

int optimal_order(EstimatorKind kind, const TheoryConstants& tc, double n,
                  int b, double gamma0) {
  if (!(n > 0.0)) throw std::domain_error("optimal_order: n must be positive");
  switch (kind) {
    case EstimatorKind::vitale:
      return round_to_multiple(
          std::pow(4.0 * tc.c4 / tc.c1, 0.4) * std::pow(n, 0.4), 2, 2);
    case EstimatorKind::leblanc:
      return round_to_multiple(
          pow29(32.0 * tc.c2 / (tc.c1 * tc.c3)) * pow29(n), 2, 2);
    case EstimatorKind::generalized:
    case EstimatorKind::multiplicative:
    case EstimatorKind::normalized: {
      const double cx = kind == EstimatorKind::generalized
                            ? tc.c2
                            : (kind == EstimatorKind::multiplicative ? tc.c5
                                                                     : tc.c6);
      const int step = (b % 2 == 0) ? b : 2 * b;  // even and divisible by b
      return round_to_multiple(
          pow29(static_cast<double>(b) * b / lambda1(b) * 8.0 * cx / tc.c1) *
              pow29(n),
          step, step);
    }
    case EstimatorKind::recursive: {
      const StepsizeSchedule step(gamma0, 1.0);
      return round_to_multiple(optimal_order_constant(tc, step) * pow29(n), 2,
                               2);
    }
  }
  throw std::invalid_argument("optimal_order: bad kind");
}

PointwiseTheory pointwise_theory(EstimatorKind kind, const TheoryConstants& tc,
                                 const TrueDensity& d, double x, double n,
                                 double m, int b) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("pointwise_theory: x outside [0,1]");
  }
  const bool edge = (x == 0.0 || x == 1.0);
  PointwiseTheory out{};
  switch (kind) {
    case EstimatorKind::vitale:
      out.bias = delta1(d, x) / m;
      out.variance = edge ? m / n * d(x)
                          : std::sqrt(m) / n * d(x) * psi_weight(x);
      break;
    case EstimatorKind::leblanc:
      out.bias = -2.0 * delta2(d, x) / (m * m);
      out.variance = edge ? 2.5 * m / n * d(x)
                          : tc.c3 * std::sqrt(m) / n * d(x) * psi_weight(x);
      break;
    case EstimatorKind::generalized:
      out.bias = -static_cast<double>(b) * delta2(d, x) / (m * m);
      out.variance = edge
                         ? lambda2(b) * m / n * d(x)
                         : lambda1(b) * std::sqrt(m) / n * d(x) * psi_weight(x);
      break;
    case EstimatorKind::multiplicative:
    case EstimatorKind::normalized: {
      if (!(d(x) > 0.0)) {
        throw std::domain_error(
            "pointwise_theory: the ratio-corrected expansions require "
            "f(x) > 0");
      }
      const double d1 = delta1(d, x);
      double functional = -d1 * d1 / (2.0 * d(x)) + delta2(d, x);
      if (kind == EstimatorKind::normalized) {
        const double inner =
            gauss_legendre(512).integrate([&d](double y) {
              const double v = delta1(d, y);
              return v * v / (2.0 * d(y));
            });
        functional += d(x) * inner;
      }
      out.bias = -static_cast<double>(b) * functional / (m * m);
      out.variance = edge
                         ? lambda2(b) * m / n * d(x)
                         : lambda1(b) * std::sqrt(m) / n * d(x) * psi_weight(x);
      break;
    }
    case EstimatorKind::recursive:
      throw std::invalid_argument(
          "pointwise_theory: use pointwise_theory_recursive");
  }
  out.mse = out.bias * out.bias + out.variance;
  return out;
}

PointwiseTheory pointwise_theory_recursive(const TheoryConstants& tc,
                                           const TrueDensity& d, double x,
                                           const StepsizeSchedule& step,
                                           const OrderSchedule& orders,
                                           std::size_t n) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("pointwise_theory_recursive: x outside [0,1]");
  }
  const bool edge = (x == 0.0 || x == 1.0);
  const double a = orders.exponent();
  const double alpha = step.alpha();
  const double xi = step.xi();
  const double m_n = orders.at(n);
  const double gamma_n = step.at(n);
  const double threshold = edge ? alpha / 5.0 : 2.0 * alpha / 9.0;

  PointwiseTheory out{};
  if (a <= threshold) {
    const double denom = 1.0 - 2.0 * a * xi;
    if (!(denom > 0.0)) {
      throw std::domain_error(
          "pointwise_theory_recursive: 1 - 2 a xi <= 0 (got " +
          std::to_string(denom) + ")");
    }
    out.bias = -2.0 * delta2(d, x) / denom / (m_n * m_n);
  } else {
    out.bias = 0.0;  // o(sqrt(gamma_n m_n^(1/2))), below the variance scale
  }
  if (a >= threshold) {
    if (edge) {
      const double denom = 2.0 - (alpha - a) * xi;
      if (!(denom > 0.0)) {
        throw std::domain_error(
            "pointwise_theory_recursive: 2 - (alpha - a) xi <= 0 (got " +
            std::to_string(denom) + ")");
      }
      out.variance = 2.5 * gamma_n * m_n * d(x) / denom;
    } else {
      const double denom = 4.0 - (2.0 * alpha - a) * xi;
      if (!(denom > 0.0)) {
        throw std::domain_error(
            "pointwise_theory_recursive: 4 - (2 alpha - a) xi <= 0 (got " +
            std::to_string(denom) + ")");
      }
      out.variance =
          2.0 * tc.c3 * gamma_n * std::sqrt(m_n) * d(x) * psi_weight(x) / denom;
    }
  } else {
    out.variance = 0.0;  // o(m_n^-4), below the bias^2 scale
  }
  out.mse = out.bias * out.bias + out.variance;
  return out;
}

CltPrediction clt_prediction(const TheoryConstants& tc, const TrueDensity& d,
                             double x, const StepsizeSchedule& step,
                             const OrderSchedule& orders) {
  if (!(x > 0.0 && x < 1.0)) {
    throw std::domain_error("clt_prediction: interior x only");
  }
  const double a = orders.exponent();
  const double alpha = step.alpha();
  const double xi = step.xi();
  // gamma_n^(-1/2) m_n^(-9/4) ~ gamma0^(-1/2) c^(-9/4) n^(alpha/2 - 9a/4)
  const double exponent = 0.5 * alpha - 2.25 * a;
  if (exponent > 0.0) {
    throw std::domain_error(
        "clt_prediction: gamma_n^(-1/2) m_n^(-9/4) diverges (a < 2 alpha / 9); "
        "only the degenerate limit applies");
  }
  CltPrediction out{};
  out.c = exponent < 0.0 ? 0.0
                         : std::pow(step.gamma0(), -0.5) *
                               std::pow(orders.constant(), -2.25);
  const double bias_denom = 1.0 - 2.0 * a * xi;
  if (!(bias_denom > 0.0)) {
    throw std::domain_error("clt_prediction: 1 - 2 a xi <= 0");
  }
  const double var_denom = 4.0 - (2.0 * alpha - a) * xi;
  if (!(var_denom > 0.0)) {
    throw std::domain_error("clt_prediction: 4 - (2 alpha - a) xi <= 0");
  }
  out.center = -2.0 * out.c * delta2(d, x) / bias_denom;
  out.stddev = std::sqrt(2.0 * tc.c3 * d(x) * psi_weight(x) / var_denom);
  return out;
}

} // namespace bernstein
