#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string_view>
#include <vector>

#include "bernstein/densities.hpp"

namespace bernstein {

//! The ten benchmark densities on [0,1]:
//!   a: Beta(3,5)                    f: Beta(1,6)/2 + Beta(3,5)/2
//!   b: Beta(1,6)                    g: Beta(2,1)/2 + Beta(1,4)/2
//!   c: Beta(3,1)                    h: Exp(mean 0.8) truncated to [0,1]
//!   d: Beta(3,9)/2 + Beta(9,3)/2    i: N(0,1) truncated to [0,1]
//!   e: Beta(3,1)/2 + Beta(10,10)/2  j: N(2,1)/4 + N(-3,1)*3/4, truncated
//! Mixture components are renormalized on [0,1] individually.
enum class ZooId { a, b, c, d, e, f, g, h, i, j };

constexpr std::array<ZooId, 10> all_zoo_ids() {
  return {ZooId::a, ZooId::b, ZooId::c, ZooId::d, ZooId::e,
          ZooId::f, ZooId::g, ZooId::h, ZooId::i, ZooId::j};
}

char zoo_label(ZooId id);
ZooId zoo_id_from(std::string_view name);

//! A zoo density bundles the analytic pdf with four derivatives, the CDF,
//! and an exact sampler.
//!
//! Sampling: integer-parameter beta variates are drawn as order statistics
//! of uniforms (the p-th smallest of p+q-1); truncated exponential and
//! normal variates by inverse CDF; mixtures pick a component first. All
//! draws consume the supplied engine only through 53-bit uniforms, so a
//! given seed yields identical samples on every platform.
class ZooDensity {
public:
  ZooId id() const noexcept { return id_; }
  const TrueDensity& density() const noexcept { return density_; }

  double pdf(double x) const { return density_(x); }
  double cdf(double x) const { return cdf_(x); }

  double draw(std::mt19937_64& gen) const { return draw_(gen); }
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

  ZooDensity(ZooId id, TrueDensity density, std::function<double(double)> cdf,
             std::function<double(std::mt19937_64&)> draw)
      : id_(id), density_(std::move(density)), cdf_(std::move(cdf)),
        draw_(std::move(draw)) {}

private:
  ZooId id_;
  TrueDensity density_;
  std::function<double(double)> cdf_;
  std::function<double(std::mt19937_64&)> draw_;
};

const ZooDensity& zoo_density(ZooId id);

} // namespace bernstein
