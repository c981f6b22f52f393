#pragma once

#include <span>
#include <utility>
#include <vector>

#include "aremos/ensemble.hpp"

namespace aremos {

/// Fitted EMOS regression parameters. The exchangeable variant carries a
/// single member weight in member_weights[0]; the full variant one weight
/// per member.
struct EmosParams {
    double intercept = 0.0;
    std::vector<double> member_weights{1.0};
    double var_intercept = 1.0;  // >= 0
    double var_slope = 1.0;      // >= 0
    bool exchangeable = true;
};

/// A Gaussian predictive law N(mean, variance), variance strictly positive.
struct GaussianPredictive {
    double mean = 0.0;
    double variance = 1.0;
};

/// One training case: ensemble plus verifying observation.
struct TrainingCase {
    const EnsembleForecast* ensemble = nullptr;
    double observation = 0.0;
};

struct EmosFitOptions {
    bool exchangeable = true;
    double relative_tolerance = 1e-8;
    long max_evaluations = 0;  // default: 500 per parameter
};

/// Variance floor keeping every predictive Gaussian well-defined.
inline constexpr double kVarianceFloor = 1e-6;

/// Ensemble mean and unbiased sample variance (divisor m-1).
std::pair<double, double> ensemble_stats(const EnsembleForecast& ensemble);

/// Closed-form CRPS of a Gaussian predictive distribution:
///   sigma * [ z (2 Phi(z) - 1) + 2 phi(z) - 1/sqrt(pi) ],  z = (y - mu)/sigma.
double gaussian_crps(const GaussianPredictive& dist, double y_obs);

/// Gaussian predictive CDF at y.
double gaussian_cdf(const GaussianPredictive& dist, double y);

/// Minimum-CRPS estimation of the EMOS parameters over a training window.
/// The simplex search runs over (a, b.., sqrt(c), sqrt(d)), squaring the
/// variance coefficients to keep them nonnegative. Windows whose ensembles
/// all have zero variance are fitted with the variance slope frozen at 0.
EmosParams fit_emos(std::span<const TrainingCase> window,
                    const EmosFitOptions& options = {});

/// Predictive distribution for one ensemble:
///   mean = a + b * Xbar (or full linear combination),
///   variance = c + d * S^2, floored at kVarianceFloor.
GaussianPredictive emos_predict(const EmosParams& params,
                                const EnsembleForecast& ensemble);

}  // namespace aremos
