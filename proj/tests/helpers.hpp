#pragma once

// Shared test utilities: independent quadrature oracle for the CRPS and a
// simple AR process simulator. These stay independent of the closed-form
// code paths they are used to check.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "aremos/artime.hpp"

namespace testutil {

/// Trapezoid quadrature of the CRPS integral
///   int (F(y) - 1{y >= y_obs})^2 dy
/// over [lo, hi] with `steps` panels.
inline double crps_quadrature(const std::function<double(double)>& cdf,
                              double y_obs, double lo, double hi,
                              std::size_t steps = 200000) {
    // The integrand jumps at y_obs, so integrate each side separately to keep
    // the trapezoid rule at its O(h^2) accuracy.
    auto trapezoid = [&](double a, double b,
                         const std::function<double(double)>& f) {
        if (b <= a) {
            return 0.0;
        }
        const std::size_t n = std::max<std::size_t>(steps / 2, 2);
        const double h = (b - a) / static_cast<double>(n);
        double acc = 0.5 * (f(a) + f(b));
        for (std::size_t i = 1; i < n; ++i) {
            acc += f(a + h * static_cast<double>(i));
        }
        return acc * h;
    };
    auto below = [&](double y) {
        const double f = cdf(y);
        return f * f;
    };
    auto above = [&](double y) {
        const double f = cdf(y) - 1.0;
        return f * f;
    };
    const double split = std::min(std::max(y_obs, lo), hi);
    return trapezoid(lo, split, below) + trapezoid(split, hi, above);
}

/// Simulate a stationary AR process with standard normal innovations scaled
/// by `innovation_sd`, after a burn-in.
inline aremos::ErrorSeries simulate_ar(const std::vector<double>& coefficients,
                                       double innovation_sd, std::size_t n,
                                       std::mt19937_64& rng,
                                       std::size_t burn_in = 300) {
    std::normal_distribution<double> noise(0.0, innovation_sd);
    const std::size_t p = coefficients.size();
    std::vector<double> history(p, 0.0);
    aremos::ErrorSeries series;
    series.values.reserve(n);
    for (std::size_t t = 0; t < burn_in + n; ++t) {
        double z = noise(rng);
        for (std::size_t j = 0; j < p; ++j) {
            z += coefficients[j] * history[history.size() - 1 - j];
        }
        if (p > 0) {
            history.push_back(z);
        }
        if (t >= burn_in) {
            series.values.push_back(z);
        }
    }
    return series;
}

}  // namespace testutil
