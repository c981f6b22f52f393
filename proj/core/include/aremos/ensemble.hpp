#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aremos/artime.hpp"

namespace aremos {

/// One station-day of ensemble forecasts.
struct EnsembleForecast {
    std::string station_id;
    long date = 0;  // serial day number (see dates.hpp)
    std::vector<double> members;
};

/// Gap-free daily series of observations and aligned ensemble forecasts for
/// one station. Immutable after ingestion.
struct StationSeries {
    std::string station_id;
    std::vector<long> dates;          // strictly increasing, unit spacing
    std::vector<double> observations;
    std::vector<EnsembleForecast> forecasts;

    std::size_t length() const { return dates.size(); }
};

/// The ensemble of one day after per-member AR modification, with the fitted
/// models each member's correction came from.
struct ARModifiedEnsemble {
    long date = 0;
    std::vector<double> members;
    std::vector<ARModel> member_models;
};

/// Which deterministic-style forecast eta(t) to extract from an ensemble.
struct SummarySelector {
    enum class Kind { Member, Mean, Median };
    Kind kind = Kind::Mean;
    std::size_t member_index = 0;  // used when kind == Member

    static SummarySelector member(std::size_t i) {
        return {Kind::Member, i};
    }
    static SummarySelector mean() { return {Kind::Mean, 0}; }
    static SummarySelector median() { return {Kind::Median, 0}; }
};

/// Half-open index range [first, last) into a StationSeries.
struct IndexWindow {
    std::size_t first = 0;
    std::size_t last = 0;
};

/// Forecast errors Z(t) = Y(t) - eta(t) over the window, with eta taken per
/// the selector.
ErrorSeries error_series(const StationSeries& series,
                         const SummarySelector& selector,
                         const IndexWindow& window);

/// Arithmetic mean or sample median of the member values. Even member counts
/// use the midpoint of the two central order statistics.
double summarize(const std::vector<double>& members, SummarySelector::Kind kind);
double summarize(const EnsembleForecast& ensemble, SummarySelector::Kind kind);
double summarize(const ARModifiedEnsemble& ensemble, SummarySelector::Kind kind);

struct ModifyOptions {
    int max_order = 15;
    /// When true, a degenerate (zero-variance) member error series falls
    /// back to an order-0 bias correction instead of failing.
    bool degenerate_fallback = true;
};

/// Apply the AR modification independently to each ensemble member of day
/// `date_index`, training on the `training_length` days immediately before
/// it. The AIC search ceiling is additionally capped at
/// floor(training_length / 10) for short windows.
ARModifiedEnsemble modify_ensemble(const StationSeries& series,
                                   std::size_t date_index,
                                   std::size_t training_length,
                                   const ModifyOptions& options = {});

/// Fit an AR model to the error series of one deterministic-style forecast
/// over [t - training_length, t) and return the modified forecast for day t.
/// Shared by modify_ensemble and the mean/median modification paths.
double ar_modify_summary(const StationSeries& series,
                         const SummarySelector& selector,
                         std::size_t date_index,
                         std::size_t training_length,
                         const ModifyOptions& options,
                         ARModel* fitted_model = nullptr);

}  // namespace aremos
