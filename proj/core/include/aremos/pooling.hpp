#pragma once

#include <random>
#include <span>
#include <utility>
#include <vector>

#include "aremos/emos.hpp"
#include "aremos/ensemble.hpp"

namespace aremos {

/// One Gaussian component of a spread-adjusted linear pool. For Gaussian
/// components the location is both mean and median.
struct SlpComponent {
    double weight = 1.0;  // >= 0, weights sum to 1
    double location = 0.0;
    double scale = 1.0;  // > 0
};

/// Weighted spread-adjusted combination of Gaussian predictive components
/// with a common spread parameter. spread = 1 reduces to the traditional
/// linear pool.
struct SlpMixture {
    std::vector<SlpComponent> components;
    double spread = 1.0;  // > 0

    static SlpMixture of(const GaussianPredictive& first,
                         const GaussianPredictive& second, double w1,
                         double spread);
};

/// Search grid over the first component weight and the spread parameter.
struct SlpSearchGrid {
    std::vector<double> weight_values;
    std::vector<double> spread_values;
    enum class Objective { Crps, Dss };
    Objective objective = Objective::Crps;

    /// The default 11 x 9 grid: w1 in {0.0,...,1.0}, spread in {0.6,...,1.4}.
    static SlpSearchGrid defaults();
};

struct SlpGridCell {
    double weight = 0.0;
    double spread = 0.0;
    double score = 0.0;
};

struct SlpGridResult {
    double best_weight = 0.0;
    double best_spread = 0.0;
    double best_score = 0.0;
    std::vector<SlpGridCell> table;  // row-major: weights outer, spreads inner
};

/// AR-EMOS predictive distribution: mean of the AR-modified ensemble, and
/// variance averaging the per-member AR process variances (floored at
/// kVarianceFloor).
GaussianPredictive ar_emos_predict(const ARModifiedEnsemble& modified,
                                   int psi_count = 10);

void validate_mixture(const SlpMixture& mix);

double slp_cdf(const SlpMixture& mix, double y);
double slp_pdf(const SlpMixture& mix, double y);

/// Mixture mean and variance:
///   mu_F = sum w_l mu_l,
///   var_F = sum w_l (mu_l^2 + spread^2 sigma_l^2) - mu_F^2.
std::pair<double, double> slp_moments(const SlpMixture& mix);

/// Dawid-Sebastiani score (y - mu_F)^2 / var_F + 2 log(sigma_F).
double dss(const SlpMixture& mix, double y_obs);

/// Closed-form mixture CRPS built from E|N(mu, sigma^2)| terms.
double slp_crps(const SlpMixture& mix, double y_obs);

/// One draw from the mixture: a component picked by weight, then a Gaussian
/// draw with scale sigma_l * spread.
double slp_sample(const SlpMixture& mix, std::mt19937_64& rng);

/// Mean objective over all aligned (component pair, observation) cases for
/// every grid cell; returns the argmin cell and the full table. Score ties
/// (within 1e-12 relative) break toward w1 closest to 0.5, then spread
/// closest to 1.0.
SlpGridResult grid_search_slp(
    std::span<const std::pair<GaussianPredictive, GaussianPredictive>> components,
    std::span<const double> observations, const SlpSearchGrid& grid);

}  // namespace aremos
