#pragma once

#include <functional>
#include <vector>

namespace aremos {

struct SimplexOptions {
    double initial_step = 0.5;
    double relative_tolerance = 1e-8;
    /// Evaluation budget; defaults to 500 per parameter when <= 0.
    long max_evaluations = 0;
};

struct SimplexResult {
    std::vector<double> point;
    double value = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// Derivative-free Nelder-Mead simplex minimization. Convergence is declared
/// when the spread between the best and worst simplex values falls below the
/// relative tolerance.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          std::vector<double> start,
                          const SimplexOptions& options = {});

}  // namespace aremos
