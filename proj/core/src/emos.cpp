#include "aremos/emos.hpp"

#include <cmath>

#include "aremos/errors.hpp"
#include "aremos/math.hpp"
#include "aremos/optim.hpp"

namespace aremos {

namespace {

struct WindowStats {
    std::vector<double> means;
    std::vector<double> variances;
    std::vector<double> observations;
    bool all_zero_variance = true;
    std::size_t member_count = 0;
};

WindowStats precompute(std::span<const TrainingCase> window) {
    WindowStats stats;
    stats.member_count = window.front().ensemble->members.size();
    for (const auto& c : window) {
        if (c.ensemble->members.size() != stats.member_count) {
            throw ValidationError("fit_emos: inconsistent member counts");
        }
        const auto [m, v] = ensemble_stats(*c.ensemble);
        stats.means.push_back(m);
        stats.variances.push_back(v);
        stats.observations.push_back(c.observation);
        if (v > 0.0) {
            stats.all_zero_variance = false;
        }
    }
    return stats;
}

double predictive_mean(const EmosParams& params, const EnsembleForecast& ensemble,
                       double ensemble_mean) {
    if (params.exchangeable) {
        return params.intercept + params.member_weights[0] * ensemble_mean;
    }
    double mu = params.intercept;
    for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
        mu += params.member_weights[i] * ensemble.members[i];
    }
    return mu;
}

}  // namespace

std::pair<double, double> ensemble_stats(const EnsembleForecast& ensemble) {
    if (ensemble.members.size() < 2) {
        throw ValidationError("ensemble_stats: need at least 2 members");
    }
    const double m = mean(ensemble.members);
    return {m, sample_variance(ensemble.members)};
}

double gaussian_crps(const GaussianPredictive& dist, double y_obs) {
    if (dist.variance <= 0.0) {
        throw ValidationError("gaussian_crps: non-positive variance");
    }
    const double sigma = std::sqrt(dist.variance);
    const double z = (y_obs - dist.mean) / sigma;
    return sigma * (z * (2.0 * norm_cdf(z) - 1.0) + 2.0 * norm_pdf(z) - kInvSqrtPi);
}

double gaussian_cdf(const GaussianPredictive& dist, double y) {
    return norm_cdf((y - dist.mean) / std::sqrt(dist.variance));
}

EmosParams fit_emos(std::span<const TrainingCase> window,
                    const EmosFitOptions& options) {
    if (window.size() < 5) {
        throw ValidationError("fit_emos: window shorter than 5 cases");
    }
    const WindowStats stats = precompute(window);
    const std::size_t m = stats.member_count;
    const std::size_t n_weights = options.exchangeable ? 1 : m;
    const bool freeze_slope = stats.all_zero_variance;

    // Parameter vector: [a, b_1..b_k, sqrt(c), (sqrt(d))].
    const std::size_t dim = 1 + n_weights + 1 + (freeze_slope ? 0 : 1);

    auto unpack = [&](const std::vector<double>& x) {
        EmosParams params;
        params.exchangeable = options.exchangeable;
        params.intercept = x[0];
        params.member_weights.assign(x.begin() + 1, x.begin() + 1 + n_weights);
        const double sc = x[1 + n_weights];
        params.var_intercept = sc * sc;
        params.var_slope = freeze_slope ? 0.0 : x[2 + n_weights] * x[2 + n_weights];
        return params;
    };

    auto objective = [&](const std::vector<double>& x) {
        const EmosParams params = unpack(x);
        double total = 0.0;
        for (std::size_t t = 0; t < window.size(); ++t) {
            GaussianPredictive dist;
            dist.mean = predictive_mean(params, *window[t].ensemble, stats.means[t]);
            dist.variance = params.var_intercept + params.var_slope * stats.variances[t];
            if (dist.variance < kVarianceFloor) {
                dist.variance = kVarianceFloor;
            }
            total += gaussian_crps(dist, stats.observations[t]);
        }
        return total / static_cast<double>(window.size());
    };

    // Initialization: a=0, b=1 (spread over members for the full variant),
    // c = sample variance of the training errors of the ensemble mean, d=1.
    std::vector<double> start(dim, 0.0);
    if (options.exchangeable) {
        start[1] = 1.0;
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            start[1 + i] = 1.0 / static_cast<double>(m);
        }
    }
    std::vector<double> mean_errors(window.size());
    for (std::size_t t = 0; t < window.size(); ++t) {
        mean_errors[t] = stats.observations[t] - stats.means[t];
    }
    const double err_var = sample_variance(mean_errors);
    start[1 + n_weights] = std::sqrt(std::max(err_var, kVarianceFloor));
    if (!freeze_slope) {
        start[2 + n_weights] = 1.0;
    }

    SimplexOptions simplex;
    simplex.relative_tolerance = options.relative_tolerance;
    simplex.max_evaluations = options.max_evaluations;
    SimplexResult result = nelder_mead(objective, start, simplex);
    // Restart once from the found minimum with a smaller simplex; the
    // restarted search polishes coordinates a stalled simplex left behind.
    SimplexOptions polish = simplex;
    polish.initial_step = 0.05;
    const SimplexResult second = nelder_mead(objective, result.point, polish);
    if (second.value <= result.value) {
        result = second;
    }
    if (!result.converged) {
        throw NumericalError("fit_emos: simplex search did not converge");
    }
    return unpack(result.point);
}

GaussianPredictive emos_predict(const EmosParams& params,
                                const EnsembleForecast& ensemble) {
    const auto [xbar, s2] = ensemble_stats(ensemble);
    GaussianPredictive dist;
    dist.mean = predictive_mean(params, ensemble, xbar);
    dist.variance = params.var_intercept + params.var_slope * s2;
    if (dist.variance < kVarianceFloor) {
        dist.variance = kVarianceFloor;
    }
    return dist;
}

}  // namespace aremos
