#pragma once

#include <cstdint>
#include <vector>

#include "aremos/ensemble.hpp"

namespace aremos {

/// Parameters of the synthetic dataset generator standing in for real
/// ensemble/observation archives.
struct SyntheticSpec {
    int station_count = 1;
    int days = 453;
    int member_count = 50;
    long start_date = 14642;  // 2010-02-01

    // Seasonal base signal: level + amplitude * sin(2 pi t / period + phase).
    double base_level = 10.0;
    double base_amplitude = 8.0;
    double base_period = 365.0;

    // Observation error process around the base signal.
    std::vector<double> ar_coefficients{0.8};
    double innovation_variance = 1.0;

    // Member construction: base + bias + noise; noise scale multiplies the
    // stationary error standard deviation, then the dispersion factor.
    double bias = 0.0;
    double member_noise_scale = 1.0;
    double dispersion_factor = 1.0;  // < 1 yields an under-dispersed ensemble
};

/// Deterministic synthetic dataset: per-station RNG streams derived from
/// (seed, station index), so stations are independent and removing one
/// never perturbs another.
std::vector<StationSeries> generate_synthetic(const SyntheticSpec& spec,
                                              std::uint64_t seed);

}  // namespace aremos
