#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aremos {

/// A forecast-error series Z(t) = Y(t) - eta(t), ordered by time with unit
/// (daily) spacing.
struct ErrorSeries {
    std::vector<double> values;
    long start_index = 0;
};

/// A fitted AR(p) model for an error series:
///   Z(t) - mean = sum_j coefficients[j-1] * (Z(t-j) - mean) + eps(t),
/// with eps(t) white noise of variance innovation_variance.
struct ARModel {
    int order = 0;
    double mean = 0.0;
    std::vector<double> coefficients;
    double innovation_variance = 0.0;
};

/// Leading coefficients psi_1..psi_q of the MA(infinity) representation of a
/// stationary AR process (psi_0 = 1 is implicit and not stored).
struct PsiWeights {
    std::vector<double> weights;
};

/// Biased sample autocovariances gamma(0..max_lag), divisor n.
///
/// The divisor-n form keeps the implied Toeplitz system positive
/// semi-definite, which Yule-Walker estimation relies on.
std::vector<double> sample_autocovariance(const ErrorSeries& series, int max_lag);

/// Fit an AR(order) model by Yule-Walker estimation (Levinson-Durbin
/// recursion on the biased autocovariances). The mean is the plain sample
/// mean. Order 0 returns {mean, gamma(0)}.
///
/// Throws DegenerateSeriesError when the series has zero variance and
/// order >= 1.
ARModel fit_yule_walker(const ErrorSeries& series, int order);

/// Select the AR order in {0..max_order} minimizing
///   AIC(p) = n * log(innovation_variance(p)) + 2p,
/// with the innovation variance taken from the Yule-Walker fit at order p.
/// Ties break toward the smaller order.
int select_order_aic(const ErrorSeries& series, int max_order);

/// AR-to-MA expansion: psi_j = sum_{i=1..min(j,p)} alpha_i * psi_{j-i},
/// psi_0 = 1. Returns psi_1..psi_count.
PsiWeights psi_weights(const ARModel& model, int count);

/// Process variance of the AR model truncated after `count` psi-weights:
///   innovation_variance * (1 + sum_{j=1..count} psi_j^2).
double process_variance(const ARModel& model, int count = 10);

/// One-step AR-modified forecast
///   eta~(t) = eta(t) + mean + sum_j alpha_j * (Z(t-j) - mean).
///
/// `recent_errors` is in chronological order; the last element is Z(t-1).
/// At order 0 this is a plain bias correction eta(t) + mean.
double ar_modified_forecast(const ARModel& model,
                            std::span<const double> recent_errors,
                            double eta);

}  // namespace aremos
