#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace aremos {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;
inline constexpr double kInvSqrtPi = 0.5641895835477562869;

/// Standard normal density.
inline double norm_pdf(double z) {
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

/// Standard normal CDF via the complementary error function.
inline double norm_cdf(double z) {
    return 0.5 * std::erfc(-z * M_SQRT1_2);
}

/// E|X| for X ~ N(mu, sigma2). The sigma2 = 0 limit is |mu|.
double abs_normal_moment(double mu, double sigma2);

double mean(std::span<const double> values);

/// Sample variance with divisor n-1. Requires n >= 2.
double sample_variance(std::span<const double> values);

double median(std::span<const double> values);

}  // namespace aremos
