#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace bernstein {

//! splitmix64 step; used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t& state);

//! Deterministic seed for a (stream, index) pair within a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index = 0);

//! Uniform draw in [0,1) with 53 random bits, identical on every platform
//! (std::uniform_real_distribution is implementation-defined, this is not).
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

//! Standard normal CDF.
double normal_cdf(double z);

//! Standard normal quantile (Acklam's rational approximation polished with
//! one Halley step); accurate to ~1e-15 over (0,1).
double normal_quantile(double p);

//! Regularized incomplete beta I_x(a, b) by continued fraction.
double reg_inc_beta(double a, double b, double x);

//! Two-sided Kolmogorov-Smirnov statistic of a sample against a CDF.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

//! Anderson-Darling normality test with estimated mean and variance
//! (case-3 statistic with the small-sample correction and the
//! D'Agostino-Stephens p-value approximation).
struct AndersonDarlingResult {
  double a2;       // raw statistic
  double a2_star;  // corrected for estimated parameters
  double p_value;
};
AndersonDarlingResult anderson_darling_normal(std::vector<double> sample);

} // namespace bernstein
