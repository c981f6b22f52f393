#include "aremos/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aremos/errors.hpp"

namespace aremos {

SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> start, const SimplexOptions& options) {
    const std::size_t n = start.size();
    if (n == 0) {
        throw ValidationError("nelder_mead: empty start point");
    }
    const long budget = options.max_evaluations > 0
                            ? options.max_evaluations
                            : 500L * static_cast<long>(n);

    constexpr double alpha = 1.0;  // reflection
    constexpr double gamma = 2.0;  // expansion
    constexpr double rho = 0.5;    // contraction
    constexpr double sigma = 0.5;  // shrink

    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) {
        double step = options.initial_step;
        if (std::abs(start[i]) > 1.0) {
            step *= std::abs(start[i]);
        }
        simplex[i + 1][i] += step;
    }

    long evals = 0;
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = objective(simplex[i]);
        ++evals;
    }

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    };

    bool converged = false;
    while (evals < budget) {
        sort_simplex();
        const double best = values[order.front()];
        const double worst = values[order.back()];
        if (worst - best <= options.relative_tolerance * (std::abs(best) + 1e-12)) {
            converged = true;
            break;
        }

        // Centroid of all points except the worst.
        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                centroid[i] += simplex[order[k]][i];
            }
        }
        for (double& c : centroid) {
            c /= static_cast<double>(n);
        }
        const std::size_t worst_idx = order.back();
        const double second_worst = values[order[n - 1]];

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t i = 0; i < n; ++i) {
                p[i] = centroid[i] + t * (centroid[i] - simplex[worst_idx][i]);
            }
            return p;
        };

        const auto reflected = blend(alpha);
        const double fr = objective(reflected);
        ++evals;
        if (fr < best) {
            const auto expanded = blend(gamma);
            const double fe = objective(expanded);
            ++evals;
            if (fe < fr) {
                simplex[worst_idx] = expanded;
                values[worst_idx] = fe;
            } else {
                simplex[worst_idx] = reflected;
                values[worst_idx] = fr;
            }
            continue;
        }
        if (fr < second_worst) {
            simplex[worst_idx] = reflected;
            values[worst_idx] = fr;
            continue;
        }
        const auto contracted = blend(fr < values[worst_idx] ? rho : -rho);
        const double fc = objective(contracted);
        ++evals;
        if (fc < std::min(fr, values[worst_idx])) {
            simplex[worst_idx] = contracted;
            values[worst_idx] = fc;
            continue;
        }
        // Shrink toward the best vertex.
        const auto& best_point = simplex[order.front()];
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == order.front()) {
                continue;
            }
            for (std::size_t i = 0; i < n; ++i) {
                simplex[k][i] = best_point[i] + sigma * (simplex[k][i] - best_point[i]);
            }
            values[k] = objective(simplex[k]);
            ++evals;
        }
    }

    sort_simplex();
    SimplexResult result;
    result.point = simplex[order.front()];
    result.value = values[order.front()];
    result.evaluations = evals;
    result.converged = converged;
    return result;
}

}  // namespace aremos
