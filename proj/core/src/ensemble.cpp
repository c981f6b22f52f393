#include "aremos/ensemble.hpp"

#include <algorithm>

#include "aremos/errors.hpp"
#include "aremos/math.hpp"

namespace aremos {

namespace {

double select_eta(const EnsembleForecast& forecast,
                  const SummarySelector& selector) {
    switch (selector.kind) {
        case SummarySelector::Kind::Member:
            if (selector.member_index >= forecast.members.size()) {
                throw ValidationError("error_series: member index out of range");
            }
            return forecast.members[selector.member_index];
        case SummarySelector::Kind::Mean:
            return mean(forecast.members);
        case SummarySelector::Kind::Median:
            return median(forecast.members);
    }
    throw ValidationError("error_series: invalid selector");
}

// AR fit over a window with AIC order selection and the short-series order
// cap. Returns an order-0 fallback for degenerate series when allowed.
ARModel fit_window(const ErrorSeries& errors, const ModifyOptions& options,
                   bool* degenerate = nullptr) {
    const std::size_t n = errors.values.size();
    int max_order = std::min<int>(options.max_order,
                                  static_cast<int>(n / 10));
    max_order = std::max(0, std::min<int>(max_order, static_cast<int>(n) - 2));
    try {
        const int p = select_order_aic(errors, max_order);
        return fit_yule_walker(errors, p);
    } catch (const DegenerateSeriesError&) {
        if (!options.degenerate_fallback) {
            throw;
        }
        if (degenerate != nullptr) {
            *degenerate = true;
        }
        ARModel model;
        model.order = 0;
        model.mean = mean(errors.values);
        model.innovation_variance = 0.0;
        return model;
    }
}

}  // namespace

ErrorSeries error_series(const StationSeries& series,
                         const SummarySelector& selector,
                         const IndexWindow& window) {
    if (window.first >= window.last || window.last > series.length()) {
        throw ValidationError("error_series: empty or out-of-range window");
    }
    ErrorSeries errors;
    errors.start_index = static_cast<long>(window.first);
    errors.values.reserve(window.last - window.first);
    for (std::size_t t = window.first; t < window.last; ++t) {
        errors.values.push_back(series.observations[t] -
                                select_eta(series.forecasts[t], selector));
    }
    return errors;
}

double summarize(const std::vector<double>& members,
                 SummarySelector::Kind kind) {
    switch (kind) {
        case SummarySelector::Kind::Mean:
            return mean(members);
        case SummarySelector::Kind::Median:
            return median(members);
        default:
            throw ValidationError("summarize: selector must be mean or median");
    }
}

double summarize(const EnsembleForecast& ensemble, SummarySelector::Kind kind) {
    return summarize(ensemble.members, kind);
}

double summarize(const ARModifiedEnsemble& ensemble,
                 SummarySelector::Kind kind) {
    return summarize(ensemble.members, kind);
}

ARModifiedEnsemble modify_ensemble(const StationSeries& series,
                                   std::size_t date_index,
                                   std::size_t training_length,
                                   const ModifyOptions& options) {
    if (date_index < training_length || date_index >= series.length()) {
        throw InsufficientHistoryError(
            "modify_ensemble: full training window not available");
    }
    const IndexWindow window{date_index - training_length, date_index};
    const auto& today = series.forecasts[date_index];
    ARModifiedEnsemble modified;
    modified.date = series.dates[date_index];
    modified.members.reserve(today.members.size());
    modified.member_models.reserve(today.members.size());
    for (std::size_t i = 0; i < today.members.size(); ++i) {
        const auto errors =
            error_series(series, SummarySelector::member(i), window);
        const ARModel model = fit_window(errors, options);
        modified.members.push_back(
            ar_modified_forecast(model, errors.values, today.members[i]));
        modified.member_models.push_back(model);
    }
    return modified;
}

double ar_modify_summary(const StationSeries& series,
                         const SummarySelector& selector,
                         std::size_t date_index,
                         std::size_t training_length,
                         const ModifyOptions& options,
                         ARModel* fitted_model) {
    if (date_index < training_length || date_index >= series.length()) {
        throw InsufficientHistoryError(
            "ar_modify_summary: full training window not available");
    }
    const IndexWindow window{date_index - training_length, date_index};
    const auto errors = error_series(series, selector, window);
    const ARModel model = fit_window(errors, options);
    if (fitted_model != nullptr) {
        *fitted_model = model;
    }
    const double eta = select_eta(series.forecasts[date_index], selector);
    return ar_modified_forecast(model, errors.values, eta);
}

}  // namespace aremos
