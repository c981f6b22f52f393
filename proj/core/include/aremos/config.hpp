#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "aremos/pooling.hpp"

namespace aremos {

/// Configuration of a full experiment run.
struct RunConfig {
    std::size_t ar_training_length = 90;    // T1
    std::size_t emos_training_length = 25;
    int max_ar_order = 15;
    int psi_count = 10;
    SlpSearchGrid slp_grid = SlpSearchGrid::defaults();
    /// Fixed SLP parameters; when unset, the grid search picks them
    /// in-sample over the verification period.
    std::optional<double> slp_weight;
    std::optional<double> slp_spread;
    std::uint64_t seed = 0;
    std::optional<std::string> station_filter;

    void validate() const;
};

}  // namespace aremos
