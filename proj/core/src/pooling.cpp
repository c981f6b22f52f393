#include "aremos/pooling.hpp"

#include <cmath>

#include "aremos/artime.hpp"
#include "aremos/errors.hpp"
#include "aremos/math.hpp"

namespace aremos {

SlpMixture SlpMixture::of(const GaussianPredictive& first,
                          const GaussianPredictive& second, double w1,
                          double spread) {
    SlpMixture mix;
    mix.spread = spread;
    mix.components.push_back({w1, first.mean, std::sqrt(first.variance)});
    mix.components.push_back({1.0 - w1, second.mean, std::sqrt(second.variance)});
    return mix;
}

SlpSearchGrid SlpSearchGrid::defaults() {
    SlpSearchGrid grid;
    for (int i = 0; i <= 10; ++i) {
        grid.weight_values.push_back(i / 10.0);
    }
    for (int i = 6; i <= 14; ++i) {
        grid.spread_values.push_back(i / 10.0);
    }
    return grid;
}

GaussianPredictive ar_emos_predict(const ARModifiedEnsemble& modified,
                                   int psi_count) {
    if (modified.member_models.size() != modified.members.size() ||
        modified.members.empty()) {
        throw ValidationError("ar_emos_predict: member models missing");
    }
    GaussianPredictive dist;
    dist.mean = summarize(modified, SummarySelector::Kind::Mean);
    double var = 0.0;
    for (const auto& model : modified.member_models) {
        var += process_variance(model, psi_count);
    }
    var /= static_cast<double>(modified.member_models.size());
    dist.variance = std::max(var, kVarianceFloor);
    return dist;
}

void validate_mixture(const SlpMixture& mix) {
    if (mix.components.empty()) {
        throw ValidationError("SlpMixture: no components");
    }
    if (!(mix.spread > 0.0)) {
        throw ValidationError("SlpMixture: spread must be strictly positive");
    }
    double total = 0.0;
    for (const auto& comp : mix.components) {
        if (comp.weight < 0.0 || !(comp.scale > 0.0)) {
            throw ValidationError("SlpMixture: invalid component");
        }
        total += comp.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ValidationError("SlpMixture: weights do not sum to 1");
    }
}

double slp_cdf(const SlpMixture& mix, double y) {
    double acc = 0.0;
    for (const auto& comp : mix.components) {
        acc += comp.weight * norm_cdf((y - comp.location) / (comp.scale * mix.spread));
    }
    return acc;
}

double slp_pdf(const SlpMixture& mix, double y) {
    double acc = 0.0;
    for (const auto& comp : mix.components) {
        const double s = comp.scale * mix.spread;
        acc += comp.weight * norm_pdf((y - comp.location) / s) / s;
    }
    return acc;
}

std::pair<double, double> slp_moments(const SlpMixture& mix) {
    double mu = 0.0;
    for (const auto& comp : mix.components) {
        mu += comp.weight * comp.location;
    }
    const double c2 = mix.spread * mix.spread;
    double second = 0.0;
    for (const auto& comp : mix.components) {
        second += comp.weight *
                  (comp.location * comp.location + c2 * comp.scale * comp.scale);
    }
    return {mu, second - mu * mu};
}

double dss(const SlpMixture& mix, double y_obs) {
    const auto [mu, var] = slp_moments(mix);
    if (!(var > 0.0)) {
        throw NumericalError("dss: non-positive mixture variance");
    }
    const double r = y_obs - mu;
    return r * r / var + std::log(var);
}

double slp_crps(const SlpMixture& mix, double y_obs) {
    const double c2 = mix.spread * mix.spread;
    double first = 0.0;
    for (const auto& comp : mix.components) {
        first += comp.weight *
                 abs_normal_moment(y_obs - comp.location,
                                   c2 * comp.scale * comp.scale);
    }
    double second = 0.0;
    for (const auto& l : mix.components) {
        for (const auto& k : mix.components) {
            second += l.weight * k.weight *
                      abs_normal_moment(l.location - k.location,
                                        c2 * (l.scale * l.scale + k.scale * k.scale));
        }
    }
    return first - 0.5 * second;
}

double slp_sample(const SlpMixture& mix, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    double cum = 0.0;
    const SlpComponent* chosen = &mix.components.back();
    for (const auto& comp : mix.components) {
        cum += comp.weight;
        if (u <= cum) {
            chosen = &comp;
            break;
        }
    }
    std::normal_distribution<double> normal(chosen->location,
                                            chosen->scale * mix.spread);
    return normal(rng);
}

SlpGridResult grid_search_slp(
    std::span<const std::pair<GaussianPredictive, GaussianPredictive>> components,
    std::span<const double> observations, const SlpSearchGrid& grid) {
    if (components.empty() || components.size() != observations.size()) {
        throw ValidationError("grid_search_slp: empty or misaligned inputs");
    }
    if (grid.weight_values.empty() || grid.spread_values.empty()) {
        throw ValidationError("grid_search_slp: empty grid");
    }

    SlpGridResult result;
    for (double w1 : grid.weight_values) {
        for (double spread : grid.spread_values) {
            double total = 0.0;
            for (std::size_t t = 0; t < components.size(); ++t) {
                const SlpMixture mix = SlpMixture::of(
                    components[t].first, components[t].second, w1, spread);
                total += grid.objective == SlpSearchGrid::Objective::Crps
                             ? slp_crps(mix, observations[t])
                             : dss(mix, observations[t]);
            }
            result.table.push_back(
                {w1, spread, total / static_cast<double>(components.size())});
        }
    }

    double min_score = result.table.front().score;
    for (const auto& cell : result.table) {
        min_score = std::min(min_score, cell.score);
    }
    const double tie_band = 1e-12 * std::max(1.0, std::abs(min_score));
    const SlpGridCell* best = nullptr;
    for (const auto& cell : result.table) {
        if (cell.score > min_score + tie_band) {
            continue;
        }
        if (best == nullptr ||
            std::abs(cell.weight - 0.5) < std::abs(best->weight - 0.5) - 1e-15 ||
            (std::abs(std::abs(cell.weight - 0.5) - std::abs(best->weight - 0.5)) <= 1e-15 &&
             std::abs(cell.spread - 1.0) < std::abs(best->spread - 1.0) - 1e-15)) {
            best = &cell;
        }
    }
    result.best_weight = best->weight;
    result.best_spread = best->spread;
    result.best_score = best->score;
    return result;
}

}  // namespace aremos
