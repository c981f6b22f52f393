#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aremos/config.hpp"
#include "aremos/pooling.hpp"
#include "aremos/verification.hpp"

namespace aremos {

/// Scores of one predictive distribution on one station-day.
struct MethodScore {
    double mean = 0.0;
    double variance = 0.0;
    double abs_error = 0.0;
    double crps = 0.0;
    double dss = 0.0;
    double pit = 0.0;
};

/// Everything produced for one station-day of the verification period.
struct CaseRecord {
    std::string station_id;
    long date = 0;
    double observation = 0.0;

    // Deterministic-style point forecasts for the MAE comparison.
    double raw_mean = 0.0;
    double raw_median = 0.0;
    double ar_modified_mean = 0.0;     // AR modification of the raw mean
    double mean_of_modified = 0.0;     // mean of the AR-modified ensemble
    double ar_modified_median = 0.0;
    double median_of_modified = 0.0;
    int mean_ar_order = 0;  // order fitted to the ensemble-mean error series

    MethodScore emos;
    MethodScore ar_emos;
    MethodScore slp;
};

struct MethodSummary {
    double mae = 0.0;
    double crps = 0.0;
    double dss = 0.0;
    double pit_var = 0.0;
    double rmv = 0.0;
};

struct StationTest {
    std::string station_id;
    std::optional<TestResult> ljung_box;  // unset for degenerate series
};

struct VerificationReport {
    RunConfig config;
    std::size_t verification_days = 0;  // T2 per station
    std::vector<CaseRecord> cases;      // ordered by station id, then date

    // MAE comparison of the deterministic-style point forecasts.
    double mae_raw_mean = 0.0;
    double mae_ar_modified_mean = 0.0;
    double mae_mean_of_modified = 0.0;
    double mae_raw_median = 0.0;
    double mae_ar_modified_median = 0.0;
    double mae_median_of_modified = 0.0;

    // Per-method aggregates, fixed order EMOS, AR-EMOS, SLP.
    MethodSummary emos;
    MethodSummary ar_emos;
    MethodSummary slp;

    double slp_weight = 0.5;
    double slp_spread = 1.0;
    std::vector<SlpGridCell> grid_table;

    HistogramSpec rank_histogram_raw;
    HistogramSpec pit_histogram_emos;
    HistogramSpec pit_histogram_ar_emos;
    HistogramSpec pit_histogram_slp;

    std::vector<StationTest> station_tests;  // Ljung-Box on mean-error series
    std::optional<TestResult> dm_emos_vs_slp;
    bool dm_degenerate = false;
    OrderFrequencyTable order_table;
};

/// Run the full chain (AR modification, AR-EMOS, EMOS, SLP) over every
/// verification day of every station with strictly rolling training windows.
/// Stations are processed concurrently; results merge by station id then
/// date. Requires all stations to cover the same date range.
VerificationReport run_experiment(const std::vector<StationSeries>& data,
                                  const RunConfig& config);

/// The training-length study: MAE of the AR-modified ensemble mean for each
/// candidate T1, averaged over all stations and the verification days that
/// remain after the longest T1 (so every candidate scores the same days).
struct SweepEntry {
    std::size_t t1 = 0;
    double mae = 0.0;
};
std::vector<SweepEntry> sweep_training_length(
    const std::vector<StationSeries>& data, const std::vector<std::size_t>& t1_values,
    int max_ar_order = 15);

}  // namespace aremos
