#include "aremos/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "aremos/errors.hpp"
#include "aremos/math.hpp"

namespace aremos {

namespace {

struct StationOutput {
    std::vector<CaseRecord> cases;
    std::vector<std::pair<GaussianPredictive, GaussianPredictive>> components;
    std::vector<const EnsembleForecast*> raw_ensembles;
    std::optional<TestResult> ljung_box_result;
};

void score_gaussian(MethodScore& score, const GaussianPredictive& dist,
                    double y_obs) {
    score.mean = dist.mean;
    score.variance = dist.variance;
    score.abs_error = std::abs(y_obs - dist.mean);
    score.crps = gaussian_crps(dist, y_obs);
    const SlpMixture single{{{1.0, dist.mean, std::sqrt(dist.variance)}}, 1.0};
    score.dss = dss(single, y_obs);
    score.pit = gaussian_cdf(dist, y_obs);
}

StationOutput process_station(const StationSeries& series, const RunConfig& config) {
    const std::size_t t1 = config.ar_training_length;
    const std::size_t emos_len = config.emos_training_length;
    const std::size_t first_day = t1 + emos_len;
    StationOutput out;

    ModifyOptions ar_options;
    ar_options.max_order = config.max_ar_order;

    for (std::size_t t = first_day; t < series.length(); ++t) {
        CaseRecord record;
        record.station_id = series.station_id;
        record.date = series.dates[t];
        record.observation = series.observations[t];

        const auto& raw = series.forecasts[t];
        record.raw_mean = summarize(raw, SummarySelector::Kind::Mean);
        record.raw_median = summarize(raw, SummarySelector::Kind::Median);

        // Per-member AR modification and the AR-EMOS distribution.
        const ARModifiedEnsemble modified = modify_ensemble(series, t, t1, ar_options);
        record.mean_of_modified = summarize(modified, SummarySelector::Kind::Mean);
        record.median_of_modified = summarize(modified, SummarySelector::Kind::Median);
        const GaussianPredictive ar_emos_dist =
            ar_emos_predict(modified, config.psi_count);

        // AR modification applied directly to the raw mean and median.
        ARModel mean_model;
        record.ar_modified_mean = ar_modify_summary(
            series, SummarySelector::mean(), t, t1, ar_options, &mean_model);
        record.mean_ar_order = mean_model.order;
        record.ar_modified_median = ar_modify_summary(
            series, SummarySelector::median(), t, t1, ar_options);

        // Local EMOS on the raw ensemble over the preceding window.
        std::vector<TrainingCase> window;
        window.reserve(emos_len);
        for (std::size_t s = t - emos_len; s < t; ++s) {
            window.push_back({&series.forecasts[s], series.observations[s]});
        }
        const EmosParams params = fit_emos(window);
        const GaussianPredictive emos_dist = emos_predict(params, raw);

        score_gaussian(record.emos, emos_dist, record.observation);
        score_gaussian(record.ar_emos, ar_emos_dist, record.observation);

        out.components.emplace_back(emos_dist, ar_emos_dist);
        out.raw_ensembles.push_back(&raw);
        out.cases.push_back(std::move(record));
    }

    try {
        const auto errors =
            error_series(series, SummarySelector::mean(), {0, series.length()});
        out.ljung_box_result = ljung_box(errors, 1);
    } catch (const NumericalError&) {
        out.ljung_box_result = std::nullopt;
    }
    return out;
}

}  // namespace

void RunConfig::validate() const {
    if (ar_training_length < static_cast<std::size_t>(max_ar_order) + 2) {
        throw ValidationError("RunConfig: ar_training_length must be >= max_ar_order + 2");
    }
    if (emos_training_length < 5) {
        throw ValidationError("RunConfig: emos_training_length must be >= 5");
    }
    if (max_ar_order < 0 || psi_count < 1) {
        throw ValidationError("RunConfig: invalid AR settings");
    }
    if (slp_weight.has_value() != slp_spread.has_value()) {
        throw ValidationError("RunConfig: fix both SLP weight and spread or neither");
    }
    if (slp_weight && (*slp_weight < 0.0 || *slp_weight > 1.0)) {
        throw ValidationError("RunConfig: SLP weight must lie in [0, 1]");
    }
    if (slp_spread && !(*slp_spread > 0.0)) {
        throw ValidationError("RunConfig: SLP spread must be strictly positive");
    }
}

VerificationReport run_experiment(const std::vector<StationSeries>& data,
                                  const RunConfig& config) {
    config.validate();
    std::vector<const StationSeries*> stations;
    for (const auto& s : data) {
        if (!config.station_filter || s.station_id == *config.station_filter) {
            stations.push_back(&s);
        }
    }
    if (stations.empty()) {
        throw ValidationError("run_experiment: no stations selected");
    }
    std::sort(stations.begin(), stations.end(),
              [](const StationSeries* a, const StationSeries* b) {
                  return a->station_id < b->station_id;
              });

    const std::size_t min_days =
        config.ar_training_length + config.emos_training_length + 1;
    for (const StationSeries* s : stations) {
        if (s->length() < min_days) {
            throw ValidationError("run_experiment: station " + s->station_id +
                                  " has fewer than " + std::to_string(min_days) +
                                  " days");
        }
        if (s->dates != stations.front()->dates) {
            throw ValidationError(
                "run_experiment: stations cover different date ranges");
        }
    }

    // Per-station fan-out; outputs land in slots indexed by station order,
    // so the merge is deterministic.
    std::vector<StationOutput> outputs(stations.size());
    {
        const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> failures(stations.size());
        for (unsigned w = 0; w < std::min<std::size_t>(workers, stations.size()); ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < stations.size();
                     i = next.fetch_add(1)) {
                    try {
                        outputs[i] = process_station(*stations[i], config);
                    } catch (...) {
                        failures[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& thread : pool) {
            thread.join();
        }
        for (const auto& failure : failures) {
            if (failure) {
                std::rethrow_exception(failure);
            }
        }
    }

    VerificationReport report;
    report.config = config;
    report.verification_days =
        stations.front()->length() - config.ar_training_length -
        config.emos_training_length;

    std::vector<std::pair<GaussianPredictive, GaussianPredictive>> components;
    std::vector<double> observations;
    std::vector<EnsembleForecast> raw_ensembles;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        for (const auto& record : outputs[i].cases) {
            observations.push_back(record.observation);
        }
        components.insert(components.end(), outputs[i].components.begin(),
                          outputs[i].components.end());
        for (const auto* e : outputs[i].raw_ensembles) {
            raw_ensembles.push_back(*e);
        }
        report.station_tests.push_back(
            {stations[i]->station_id, outputs[i].ljung_box_result});
        for (auto& record : outputs[i].cases) {
            report.cases.push_back(std::move(record));
        }
    }

    // SLP parameters: configured, or picked in-sample by the grid search.
    // The full score table is computed either way.
    const SlpGridResult grid =
        grid_search_slp(components, observations, config.slp_grid);
    report.grid_table = grid.table;
    report.slp_weight = config.slp_weight.value_or(grid.best_weight);
    report.slp_spread = config.slp_spread.value_or(grid.best_spread);

    for (std::size_t i = 0; i < report.cases.size(); ++i) {
        auto& record = report.cases[i];
        const SlpMixture mix =
            SlpMixture::of(components[i].first, components[i].second,
                           report.slp_weight, report.slp_spread);
        const auto [mu, var] = slp_moments(mix);
        record.slp.mean = mu;
        record.slp.variance = var;
        record.slp.abs_error = std::abs(record.observation - mu);
        record.slp.crps = slp_crps(mix, record.observation);
        record.slp.dss = dss(mix, record.observation);
        record.slp.pit = slp_cdf(mix, record.observation);
    }

    // Aggregates.
    const std::size_t n = report.cases.size();
    auto aggregate = [&](auto accessor) {
        MethodSummary summary;
        std::vector<double> pits(n);
        std::vector<double> variances(n);
        for (std::size_t i = 0; i < n; ++i) {
            const MethodScore& score = accessor(report.cases[i]);
            summary.mae += score.abs_error;
            summary.crps += score.crps;
            summary.dss += score.dss;
            pits[i] = score.pit;
            variances[i] = score.variance;
        }
        summary.mae /= static_cast<double>(n);
        summary.crps /= static_cast<double>(n);
        summary.dss /= static_cast<double>(n);
        summary.pit_var = pit_variance(pits);
        summary.rmv = rmv(variances);
        return summary;
    };
    report.emos = aggregate([](const CaseRecord& r) -> const MethodScore& { return r.emos; });
    report.ar_emos =
        aggregate([](const CaseRecord& r) -> const MethodScore& { return r.ar_emos; });
    report.slp = aggregate([](const CaseRecord& r) -> const MethodScore& { return r.slp; });

    auto deterministic_mae = [&](auto accessor) {
        double acc = 0.0;
        for (const auto& record : report.cases) {
            acc += std::abs(record.observation - accessor(record));
        }
        return acc / static_cast<double>(n);
    };
    report.mae_raw_mean = deterministic_mae([](const CaseRecord& r) { return r.raw_mean; });
    report.mae_ar_modified_mean =
        deterministic_mae([](const CaseRecord& r) { return r.ar_modified_mean; });
    report.mae_mean_of_modified =
        deterministic_mae([](const CaseRecord& r) { return r.mean_of_modified; });
    report.mae_raw_median =
        deterministic_mae([](const CaseRecord& r) { return r.raw_median; });
    report.mae_ar_modified_median =
        deterministic_mae([](const CaseRecord& r) { return r.ar_modified_median; });
    report.mae_median_of_modified =
        deterministic_mae([](const CaseRecord& r) { return r.median_of_modified; });

    // Histograms.
    {
        std::vector<double> pit_emos(n), pit_ar(n), pit_slp(n);
        for (std::size_t i = 0; i < n; ++i) {
            pit_emos[i] = report.cases[i].emos.pit;
            pit_ar[i] = report.cases[i].ar_emos.pit;
            pit_slp[i] = report.cases[i].slp.pit;
        }
        report.pit_histogram_emos = pit_histogram(pit_emos);
        report.pit_histogram_ar_emos = pit_histogram(pit_ar);
        report.pit_histogram_slp = pit_histogram(pit_slp);
        report.rank_histogram_raw =
            rank_histogram(raw_ensembles, observations, config.seed);
    }

    // Frequency table of the AR orders fitted to the ensemble-mean errors.
    {
        std::vector<int> orders(n);
        for (std::size_t i = 0; i < n; ++i) {
            orders[i] = report.cases[i].mean_ar_order;
        }
        report.order_table = order_frequency_table(orders);
    }

    // Diebold-Mariano on station-averaged daily CRPS series, EMOS vs SLP.
    {
        const std::size_t t2 = report.verification_days;
        const std::size_t station_count = stations.size();
        ScoreSeries emos_series, slp_series;
        emos_series.values.assign(t2, 0.0);
        slp_series.values.assign(t2, 0.0);
        for (std::size_t s = 0; s < station_count; ++s) {
            for (std::size_t d = 0; d < t2; ++d) {
                const auto& record = report.cases[s * t2 + d];
                emos_series.values[d] += record.emos.crps;
                slp_series.values[d] += record.slp.crps;
            }
        }
        for (std::size_t d = 0; d < t2; ++d) {
            emos_series.values[d] /= static_cast<double>(station_count);
            slp_series.values[d] /= static_cast<double>(station_count);
        }
        try {
            report.dm_emos_vs_slp = diebold_mariano(emos_series, slp_series);
        } catch (const Error&) {
            report.dm_degenerate = true;
        }
    }

    return report;
}

std::vector<SweepEntry> sweep_training_length(
    const std::vector<StationSeries>& data,
    const std::vector<std::size_t>& t1_values, int max_ar_order) {
    if (data.empty() || t1_values.empty()) {
        throw ValidationError("sweep_training_length: empty inputs");
    }
    const std::size_t max_t1 =
        *std::max_element(t1_values.begin(), t1_values.end());
    for (const auto& station : data) {
        if (station.length() <= max_t1) {
            throw ValidationError("sweep_training_length: station " +
                                  station.station_id + " shorter than largest T1");
        }
    }

    ModifyOptions options;
    options.max_order = max_ar_order;
    std::vector<SweepEntry> entries;
    for (std::size_t t1 : t1_values) {
        double acc = 0.0;
        std::size_t count = 0;
        for (const auto& station : data) {
            for (std::size_t t = max_t1; t < station.length(); ++t) {
                const double forecast = ar_modify_summary(
                    station, SummarySelector::mean(), t, t1, options);
                acc += std::abs(station.observations[t] - forecast);
                ++count;
            }
        }
        entries.push_back({t1, acc / static_cast<double>(count)});
    }
    return entries;
}

}  // namespace aremos
