#include "aremos/synthetic.hpp"

#include <cmath>
#include <random>

#include "aremos/errors.hpp"

namespace aremos {

namespace {

// Stationary variance of the AR process, via the psi-weight expansion
// truncated far enough to be negligible at the tail.
double stationary_variance(const std::vector<double>& coeffs,
                           double innovation_variance) {
    if (coeffs.empty()) {
        return innovation_variance;
    }
    ARModel model;
    model.order = static_cast<int>(coeffs.size());
    model.coefficients = coeffs;
    model.innovation_variance = innovation_variance;
    return process_variance(model, 400);
}

}  // namespace

std::vector<StationSeries> generate_synthetic(const SyntheticSpec& spec,
                                              std::uint64_t seed) {
    if (spec.station_count < 1 || spec.days < 2 || spec.member_count < 2) {
        throw ValidationError("generate_synthetic: invalid spec dimensions");
    }
    if (spec.innovation_variance < 0.0 || spec.dispersion_factor <= 0.0 ||
        spec.member_noise_scale <= 0.0) {
        throw ValidationError("generate_synthetic: invalid spec scales");
    }

    const int p = static_cast<int>(spec.ar_coefficients.size());
    const double error_sd =
        std::sqrt(stationary_variance(spec.ar_coefficients, spec.innovation_variance));
    const double member_sd =
        spec.member_noise_scale * spec.dispersion_factor * error_sd;
    const int burn_in = 200;

    std::vector<StationSeries> stations;
    stations.reserve(spec.station_count);
    for (int s = 0; s < spec.station_count; ++s) {
        std::seed_seq seq{seed, static_cast<std::uint64_t>(s)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> innovation(0.0, std::sqrt(spec.innovation_variance));
        std::normal_distribution<double> member_noise(0.0, member_sd);

        StationSeries series;
        series.station_id = "S" + std::to_string(s + 1);
        const double phase = 2.0 * M_PI * s / std::max(1, spec.station_count);

        // Burn in the AR error process so the series starts stationary.
        std::vector<double> history(p, 0.0);
        auto step_error = [&] {
            double e = innovation(rng);
            for (int j = 0; j < p; ++j) {
                e += spec.ar_coefficients[j] * history[history.size() - 1 - j];
            }
            if (p > 0) {
                history.push_back(e);
            }
            return e;
        };
        for (int t = 0; t < burn_in; ++t) {
            step_error();
        }

        for (int t = 0; t < spec.days; ++t) {
            const long date = spec.start_date + t;
            const double base =
                spec.base_level +
                spec.base_amplitude * std::sin(2.0 * M_PI * t / spec.base_period + phase);
            const double error = step_error();

            series.dates.push_back(date);
            series.observations.push_back(base + error);

            EnsembleForecast forecast;
            forecast.station_id = series.station_id;
            forecast.date = date;
            forecast.members.reserve(spec.member_count);
            for (int i = 0; i < spec.member_count; ++i) {
                forecast.members.push_back(base + spec.bias + member_noise(rng));
            }
            series.forecasts.push_back(std::move(forecast));
        }
        stations.push_back(std::move(series));
    }
    return stations;
}

}  // namespace aremos
