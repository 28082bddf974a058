#include "bernstein/densities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bernstein/quadrature.hpp"

namespace bernstein {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(0.0);
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial{{0.0}};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    d[i - 1] = static_cast<double>(i) * c_[i];
  }
  return Polynomial{std::move(d)};
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), 0.0);
  for (std::size_t i = 0; i < other.c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

namespace {

void validate_density(const TrueDensity::Fn& f) {
  const auto& rule = gauss_legendre(512);
  double mass = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!(v >= -1e-12) || !std::isfinite(v)) {
      throw std::invalid_argument(
          "TrueDensity: negative or non-finite value at x=" +
          std::to_string(rule.nodes[i]));
    }
    mass += rule.weights[i] * v;
  }
  if (std::abs(mass - 1.0) > 1e-8) {
    throw std::invalid_argument("TrueDensity: integral is " +
                                std::to_string(mass) + ", expected 1");
  }
}

} // namespace

TrueDensity::TrueDensity(Fn f, Fn d1, Fn d2, Fn d3, Fn d4)
    : fs_{std::move(f), std::move(d1), std::move(d2), std::move(d3),
          std::move(d4)},
      f_(fs_[0]) {
  validate_density(f_);
}

TrueDensity TrueDensity::from_function(Fn f) {
  // clamp stencil abscissas into [0,1]; near an edge this turns the central
  // stencil into the shifted (one-sided) one
  auto at = [f](double x) { return f(std::clamp(x, 0.0, 1.0)); };
  auto shift = [](double x, double h, double half_width) {
    return std::clamp(x, half_width * h, 1.0 - half_width * h);
  };
  Fn d1 = [at, shift](double x) {
    const double h = 1e-3;
    const double c = shift(x, h, 2.0);
    return (at(c - 2 * h) - 8 * at(c - h) + 8 * at(c + h) - at(c + 2 * h)) /
           (12 * h);
  };
  Fn d2 = [at, shift](double x) {
    const double h = 1e-3;
    const double c = shift(x, h, 2.0);
    return (-at(c - 2 * h) + 16 * at(c - h) - 30 * at(c) + 16 * at(c + h) -
            at(c + 2 * h)) /
           (12 * h * h);
  };
  Fn d3 = [at, shift](double x) {
    const double h = 4e-3;
    const double c = shift(x, h, 4.0);
    return (-7.0 / 240.0 * at(c - 4 * h) + 3.0 / 10.0 * at(c - 3 * h) -
            169.0 / 120.0 * at(c - 2 * h) + 61.0 / 30.0 * at(c - h) -
            61.0 / 30.0 * at(c + h) + 169.0 / 120.0 * at(c + 2 * h) -
            3.0 / 10.0 * at(c + 3 * h) + 7.0 / 240.0 * at(c + 4 * h)) /
           (h * h * h);
  };
  Fn d4 = [at, shift](double x) {
    const double h = 8e-3;
    const double c = shift(x, h, 4.0);
    return (7.0 / 240.0 * (at(c - 4 * h) + at(c + 4 * h)) -
            2.0 / 5.0 * (at(c - 3 * h) + at(c + 3 * h)) +
            169.0 / 60.0 * (at(c - 2 * h) + at(c + 2 * h)) -
            122.0 / 15.0 * (at(c - h) + at(c + h)) + 91.0 / 8.0 * at(c)) /
           (h * h * h * h);
  };
  return TrueDensity(std::move(f), std::move(d1), std::move(d2), std::move(d3),
                     std::move(d4));
}

TrueDensity TrueDensity::uniform() {
  auto one = [](double) { return 1.0; };
  auto zero = [](double) { return 0.0; };
  return TrueDensity(one, zero, zero, zero, zero);
}

TrueDensity TrueDensity::from_polynomial(const Polynomial& p) {
  Polynomial d1 = p.derivative();
  Polynomial d2 = d1.derivative();
  Polynomial d3 = d2.derivative();
  Polynomial d4 = d3.derivative();
  return TrueDensity([p](double x) { return p(x); },
                     [d1](double x) { return d1(x); },
                     [d2](double x) { return d2(x); },
                     [d3](double x) { return d3(x); },
                     [d4](double x) { return d4(x); });
}

double TrueDensity::deriv(int k, double x) const {
  if (k < 0 || k > 4) {
    throw std::domain_error("TrueDensity::deriv: order must be in [0,4]");
  }
  return fs_[static_cast<std::size_t>(k)](x);
}

} // namespace bernstein
