#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "aremos/artime.hpp"
#include "aremos/ensemble.hpp"

namespace aremos {

/// Per-day score series aligned to verification dates (e.g. station-averaged
/// CRPS).
struct ScoreSeries {
    std::vector<double> values;
};

/// Binned counts for a rank or PIT histogram.
struct HistogramSpec {
    int bin_count = 0;
    std::vector<long> counts;
};

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

double mae(std::span<const double> forecasts, std::span<const double> observations);

/// F(y_obs) for any predictive CDF.
double pit_value(const std::function<double(double)>& cdf, double y_obs);

/// Sample variance (divisor n-1) of PIT values; 1/12 indicates neutral
/// dispersion.
double pit_variance(std::span<const double> pits);

/// Histogram of PIT values over [0, 1] with `bin_count` equal bins.
HistogramSpec pit_histogram(std::span<const double> pits, int bin_count = 20);

/// Verification rank histogram with m+1 bins. The observation's rank among
/// the members is 1..m+1; ties are resolved by a uniform random rank among
/// the tied positions, reproducible under the injected seed.
HistogramSpec rank_histogram(std::span<const EnsembleForecast> ensembles,
                             std::span<const double> observations,
                             std::uint64_t seed);

/// Root mean variance, the sharpness summary of a set of predictive
/// variances.
double rmv(std::span<const double> variances);

/// Chi-square uniformity test of histogram counts against equal expected
/// bin occupancy.
TestResult chi_square_uniformity(const HistogramSpec& histogram);

/// Ljung-Box test for autocorrelation up to `lag`:
///   Q = n (n+2) sum_{tau=1..lag} rho^2(tau) / (n - tau),
/// with the p-value from the chi-square law with `lag` degrees of freedom.
TestResult ljung_box(const ErrorSeries& series, int lag = 1);

struct DieboldMarianoOptions {
    int truncation_h = 1;
    bool one_sided = false;
};

/// Diebold-Mariano test of equal predictive performance on the score
/// differential d_t = g1_t - g2_t. Throws NumericalError when the long-run
/// variance of the differential is not positive (e.g. identical series).
TestResult diebold_mariano(const ScoreSeries& g1, const ScoreSeries& g2,
                           const DieboldMarianoOptions& options = {});

/// Absolute frequencies of selected AR orders, plus a grouped bucket for
/// orders >= 5.
struct OrderFrequencyTable {
    std::map<int, long> counts;

    long grouped_high_orders() const;  // total count of orders >= 5
};

OrderFrequencyTable order_frequency_table(std::span<const int> fitted_orders);

}  // namespace aremos
