#include "aremos/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>

#include "aremos/errors.hpp"
#include "aremos/math.hpp"

namespace aremos {

double mae(std::span<const double> forecasts,
           std::span<const double> observations) {
    if (forecasts.size() != observations.size()) {
        throw ValidationError("mae: length mismatch");
    }
    if (forecasts.empty()) {
        throw ValidationError("mae: empty inputs");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < forecasts.size(); ++i) {
        acc += std::abs(observations[i] - forecasts[i]);
    }
    return acc / static_cast<double>(forecasts.size());
}

double pit_value(const std::function<double(double)>& cdf, double y_obs) {
    return cdf(y_obs);
}

double pit_variance(std::span<const double> pits) {
    return sample_variance(pits);
}

HistogramSpec pit_histogram(std::span<const double> pits, int bin_count) {
    if (bin_count < 1) {
        throw ValidationError("pit_histogram: bin_count must be >= 1");
    }
    HistogramSpec spec;
    spec.bin_count = bin_count;
    spec.counts.assign(bin_count, 0);
    for (double p : pits) {
        int bin = static_cast<int>(p * bin_count);
        bin = std::clamp(bin, 0, bin_count - 1);
        ++spec.counts[bin];
    }
    return spec;
}

HistogramSpec rank_histogram(std::span<const EnsembleForecast> ensembles,
                             std::span<const double> observations,
                             std::uint64_t seed) {
    if (ensembles.size() != observations.size()) {
        throw ValidationError("rank_histogram: misaligned inputs");
    }
    if (ensembles.empty()) {
        throw ValidationError("rank_histogram: empty inputs");
    }
    const std::size_t m = ensembles.front().members.size();
    HistogramSpec spec;
    spec.bin_count = static_cast<int>(m) + 1;
    spec.counts.assign(m + 1, 0);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < ensembles.size(); ++i) {
        const auto& members = ensembles[i].members;
        if (members.size() != m) {
            throw ValidationError("rank_histogram: inconsistent member counts");
        }
        const double y = observations[i];
        long below = 0;
        long tied = 0;
        for (double x : members) {
            if (x < y) {
                ++below;
            } else if (x == y) {
                ++tied;
            }
        }
        long rank = below + 1;
        if (tied > 0) {
            std::uniform_int_distribution<long> pick(0, tied);
            rank += pick(rng);
        }
        ++spec.counts[rank - 1];
    }
    return spec;
}

double rmv(std::span<const double> variances) {
    if (variances.empty()) {
        throw ValidationError("rmv: empty input");
    }
    double acc = 0.0;
    for (double v : variances) {
        if (v < 0.0) {
            throw ValidationError("rmv: negative variance");
        }
        acc += v;
    }
    return std::sqrt(acc / static_cast<double>(variances.size()));
}

TestResult chi_square_uniformity(const HistogramSpec& histogram) {
    if (histogram.bin_count < 2) {
        throw ValidationError("chi_square_uniformity: need >= 2 bins");
    }
    long total = 0;
    for (long c : histogram.counts) {
        total += c;
    }
    if (total == 0) {
        throw ValidationError("chi_square_uniformity: empty histogram");
    }
    const double expected =
        static_cast<double>(total) / static_cast<double>(histogram.bin_count);
    double stat = 0.0;
    for (long c : histogram.counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    const boost::math::chi_squared law(histogram.bin_count - 1);
    return {stat, boost::math::cdf(boost::math::complement(law, stat))};
}

TestResult ljung_box(const ErrorSeries& series, int lag) {
    const std::size_t n = series.values.size();
    if (lag < 1) {
        throw ValidationError("ljung_box: lag must be >= 1");
    }
    if (n <= static_cast<std::size_t>(lag) + 1) {
        throw ValidationError("ljung_box: series too short for lag " +
                              std::to_string(lag));
    }
    const auto gamma = sample_autocovariance(series, lag);
    if (gamma[0] <= 0.0) {
        throw DegenerateSeriesError("ljung_box: zero-variance series");
    }
    const double dn = static_cast<double>(n);
    double q = 0.0;
    for (int tau = 1; tau <= lag; ++tau) {
        const double rho = gamma[tau] / gamma[0];
        q += rho * rho / (dn - tau);
    }
    q *= dn * (dn + 2.0);
    const boost::math::chi_squared law(lag);
    return {q, boost::math::cdf(boost::math::complement(law, q))};
}

TestResult diebold_mariano(const ScoreSeries& g1, const ScoreSeries& g2,
                           const DieboldMarianoOptions& options) {
    const std::size_t n = g1.values.size();
    const int h = options.truncation_h;
    if (h < 1) {
        throw ValidationError("diebold_mariano: h must be >= 1");
    }
    if (n != g2.values.size()) {
        throw ValidationError("diebold_mariano: length mismatch");
    }
    if (n <= 2 * static_cast<std::size_t>(h)) {
        throw ValidationError("diebold_mariano: series too short");
    }

    ErrorSeries diff;
    diff.values.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        diff.values[t] = g1.values[t] - g2.values[t];
    }
    const double dbar = mean(diff.values);
    const auto gamma = sample_autocovariance(diff, h - 1);
    // Long-run variance: gamma(0) + 2 sum_{tau=1..h-1} gamma(tau), i.e. the
    // symmetric sum over tau = -(h-1)..h-1.
    double longrun = gamma[0];
    for (int tau = 1; tau <= h - 1; ++tau) {
        longrun += 2.0 * gamma[tau];
    }
    if (longrun <= 0.0) {
        throw NumericalError(
            "diebold_mariano: degenerate score differential (zero long-run variance)");
    }
    const double s = std::sqrt(static_cast<double>(n)) * dbar / std::sqrt(longrun);
    const double tail = norm_cdf(-std::abs(s));
    return {s, options.one_sided ? tail : 2.0 * tail};
}

long OrderFrequencyTable::grouped_high_orders() const {
    long total = 0;
    for (const auto& [order, count] : counts) {
        if (order >= 5) {
            total += count;
        }
    }
    return total;
}

OrderFrequencyTable order_frequency_table(std::span<const int> fitted_orders) {
    OrderFrequencyTable table;
    for (int p : fitted_orders) {
        ++table.counts[p];
    }
    return table;
}

}  // namespace aremos
