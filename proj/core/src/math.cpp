#include "aremos/math.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "aremos/errors.hpp"

namespace aremos {

double abs_normal_moment(double mu, double sigma2) {
    if (sigma2 <= 0.0) {
        return std::abs(mu);
    }
    const double sigma = std::sqrt(sigma2);
    const double z = mu / sigma;
    return 2.0 * sigma * norm_pdf(z) + mu * (2.0 * norm_cdf(z) - 1.0);
}

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw ValidationError("mean: empty input");
    }
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw ValidationError("sample_variance: need at least 2 values");
    }
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - m) * (v - m);
    }
    return ss / static_cast<double>(n - 1);
}

double median(std::span<const double> values) {
    if (values.empty()) {
        throw ValidationError("median: empty input");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n % 2 == 1) {
        return sorted[n / 2];
    }
    // Even count: midpoint of the two central order statistics.
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

}  // namespace aremos
