#include "bernstein/transforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bernstein {

SupportTransform SupportTransform::bounded(double lo, double hi) {
  if (!(lo < hi)) {
    throw std::invalid_argument("SupportTransform::bounded: need lo < hi");
  }
  return SupportTransform(Kind::bounded, lo, hi);
}

SupportTransform SupportTransform::parse(std::string_view spec) {
  if (spec == "unit" || spec.empty()) return identity();
  if (spec == "real") return real_line();
  if (spec == "halfline") return half_line();
  const auto comma = spec.find(',');
  if (comma == std::string_view::npos) {
    throw std::invalid_argument(
        "SupportTransform: expected 'lo,hi', 'real', 'halfline' or 'unit', got '" +
        std::string(spec) + "'");
  }
  std::size_t used = 0;
  const std::string lo_s(spec.substr(0, comma)), hi_s(spec.substr(comma + 1));
  const double lo = std::stod(lo_s, &used);
  if (used != lo_s.size()) {
    throw std::invalid_argument("SupportTransform: bad bound '" + lo_s + "'");
  }
  const double hi = std::stod(hi_s, &used);
  if (used != hi_s.size()) {
    throw std::invalid_argument("SupportTransform: bad bound '" + hi_s + "'");
  }
  return bounded(lo, hi);
}

double SupportTransform::forward(double x) const {
  switch (kind_) {
    case Kind::bounded:
      if (x < lo_ || x > hi_) {
        throw std::domain_error("SupportTransform: observation " +
                                std::to_string(x) + " outside [" +
                                std::to_string(lo_) + "," +
                                std::to_string(hi_) + "]");
      }
      return (x - lo_) / (hi_ - lo_);
    case Kind::real_line:
      return 0.5 + std::atan(x) / std::numbers::pi;
    case Kind::half_line:
      if (x < 0.0) {
        throw std::domain_error("SupportTransform: negative observation " +
                                std::to_string(x) + " on a [0,inf) support");
      }
      return x / (x + 1.0);
    case Kind::identity:
      if (x < 0.0 || x > 1.0) {
        throw std::domain_error("SupportTransform: observation " +
                                std::to_string(x) + " outside [0,1]");
      }
      return x;
  }
  throw std::logic_error("SupportTransform: bad kind");
}

double SupportTransform::backward(double u) const {
  switch (kind_) {
    case Kind::bounded:
      return lo_ + u * (hi_ - lo_);
    case Kind::real_line:
      return std::tan(std::numbers::pi * (u - 0.5));
    case Kind::half_line:
      return u / (1.0 - u);
    case Kind::identity:
      return u;
  }
  throw std::logic_error("SupportTransform: bad kind");
}

double SupportTransform::jacobian(double x) const {
  switch (kind_) {
    case Kind::bounded:
      return 1.0 / (hi_ - lo_);
    case Kind::real_line:
      return 1.0 / (std::numbers::pi * (1.0 + x * x));
    case Kind::half_line:
      return 1.0 / ((1.0 + x) * (1.0 + x));
    case Kind::identity:
      return 1.0;
  }
  throw std::logic_error("SupportTransform: bad kind");
}

} // namespace bernstein
