#include "aremos/artime.hpp"

#include <cmath>
#include <limits>

#include "aremos/errors.hpp"
#include "aremos/math.hpp"

namespace aremos {

namespace {

// Levinson-Durbin recursion on gamma(0..order). Produces the Yule-Walker
// coefficients and the innovation variance at every order up to `order`.
// Reflection coefficients stay inside (-1, 1) as long as the prediction
// variance stays positive, so every returned model is weakly stationary.
struct LevinsonResult {
    std::vector<std::vector<double>> coefficients;  // per order 0..p
    std::vector<double> innovation_variance;        // per order 0..p
};

LevinsonResult levinson_durbin(const std::vector<double>& gamma, int order) {
    LevinsonResult result;
    result.coefficients.resize(order + 1);
    result.innovation_variance.resize(order + 1);
    result.innovation_variance[0] = gamma[0];

    std::vector<double> a;  // coefficients at the current order
    double sigma2 = gamma[0];
    for (int k = 1; k <= order; ++k) {
        if (sigma2 <= 0.0) {
            throw DegenerateSeriesError(
                "fit_yule_walker: singular Yule-Walker system at order " +
                std::to_string(k));
        }
        double acc = gamma[k];
        for (int j = 1; j < k; ++j) {
            acc -= a[j - 1] * gamma[k - j];
        }
        const double kappa = acc / sigma2;
        std::vector<double> next(k);
        next[k - 1] = kappa;
        for (int j = 1; j < k; ++j) {
            next[j - 1] = a[j - 1] - kappa * a[k - j - 1];
        }
        a = std::move(next);
        sigma2 *= (1.0 - kappa * kappa);
        if (sigma2 < 0.0) {
            sigma2 = 0.0;
        }
        result.coefficients[k] = a;
        result.innovation_variance[k] = sigma2;
    }
    return result;
}

}  // namespace

std::vector<double> sample_autocovariance(const ErrorSeries& series, int max_lag) {
    const std::size_t n = series.values.size();
    if (n < 2) {
        throw DegenerateSeriesError(
            "sample_autocovariance: series shorter than 2");
    }
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n) {
        throw ValidationError("sample_autocovariance: max_lag out of range");
    }
    const double m = mean(series.values);
    std::vector<double> gamma(max_lag + 1, 0.0);
    for (int tau = 0; tau <= max_lag; ++tau) {
        double acc = 0.0;
        for (std::size_t t = tau; t < n; ++t) {
            acc += (series.values[t] - m) * (series.values[t - tau] - m);
        }
        gamma[tau] = acc / static_cast<double>(n);
    }
    return gamma;
}

ARModel fit_yule_walker(const ErrorSeries& series, int order) {
    if (order < 0) {
        throw ValidationError("fit_yule_walker: negative order");
    }
    const std::size_t n = series.values.size();
    if (n <= static_cast<std::size_t>(order) + 1) {
        throw ValidationError("fit_yule_walker: series too short for order " +
                              std::to_string(order));
    }
    const auto gamma = sample_autocovariance(series, order);
    ARModel model;
    model.order = order;
    model.mean = mean(series.values);
    if (order == 0) {
        model.innovation_variance = gamma[0];
        return model;
    }
    const auto lev = levinson_durbin(gamma, order);
    model.coefficients = lev.coefficients[order];
    model.innovation_variance = lev.innovation_variance[order];
    return model;
}

int select_order_aic(const ErrorSeries& series, int max_order) {
    const std::size_t n = series.values.size();
    if (max_order < 0 || static_cast<std::size_t>(max_order) >= n - 1) {
        throw ValidationError("select_order_aic: max_order out of range");
    }
    const auto gamma = sample_autocovariance(series, max_order);
    if (gamma[0] <= 0.0) {
        throw DegenerateSeriesError("select_order_aic: zero-variance series");
    }
    const auto lev = levinson_durbin(gamma, max_order);
    const double dn = static_cast<double>(n);
    int best_order = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= max_order; ++p) {
        const double s2 = lev.innovation_variance[p];
        const double aic = s2 > 0.0
                               ? dn * std::log(s2) + 2.0 * p
                               : -std::numeric_limits<double>::infinity();
        if (aic < best_aic) {
            best_aic = aic;
            best_order = p;
        }
    }
    return best_order;
}

PsiWeights psi_weights(const ARModel& model, int count) {
    if (count < 1) {
        throw ValidationError("psi_weights: count must be >= 1");
    }
    std::vector<double> psi(count + 1, 0.0);
    psi[0] = 1.0;
    for (int j = 1; j <= count; ++j) {
        double acc = 0.0;
        const int top = std::min(j, model.order);
        for (int i = 1; i <= top; ++i) {
            acc += model.coefficients[i - 1] * psi[j - i];
        }
        psi[j] = acc;
    }
    return PsiWeights{std::vector<double>(psi.begin() + 1, psi.end())};
}

double process_variance(const ARModel& model, int count) {
    const auto psi = psi_weights(model, count);
    double acc = 1.0;
    for (double w : psi.weights) {
        acc += w * w;
    }
    return model.innovation_variance * acc;
}

double ar_modified_forecast(const ARModel& model,
                            std::span<const double> recent_errors,
                            double eta) {
    const int p = model.order;
    if (recent_errors.size() < static_cast<std::size_t>(p)) {
        throw InsufficientHistoryError(
            "ar_modified_forecast: need " + std::to_string(p) +
            " recent errors, got " + std::to_string(recent_errors.size()));
    }
    double value = eta + model.mean;
    const std::size_t n = recent_errors.size();
    for (int j = 1; j <= p; ++j) {
        value += model.coefficients[j - 1] * (recent_errors[n - j] - model.mean);
    }
    return value;
}

}  // namespace aremos
