#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "aremos/emos.hpp"
#include "aremos/errors.hpp"
#include "aremos/math.hpp"
#include "helpers.hpp"

using namespace aremos;

namespace {

EnsembleForecast make_ensemble(std::vector<double> members) {
    EnsembleForecast e;
    e.members = std::move(members);
    return e;
}

struct SyntheticWindow {
    std::vector<EnsembleForecast> ensembles;
    std::vector<TrainingCase> cases;
};

// Data generated exactly from the exchangeable EMOS model with the given
// parameters.
SyntheticWindow make_emos_window(double a, double b, double c, double d,
                                 std::size_t days, std::size_t m,
                                 std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> signal(10.0, 5.0);
    std::normal_distribution<double> member_noise(0.0, 1.0);
    std::normal_distribution<double> unit(0.0, 1.0);
    SyntheticWindow window;
    window.ensembles.resize(days);
    for (std::size_t t = 0; t < days; ++t) {
        const double base = signal(rng);
        auto& e = window.ensembles[t];
        e.members.resize(m);
        for (auto& x : e.members) {
            x = base + member_noise(rng);
        }
        const auto [xbar, s2] = ensemble_stats(e);
        const double sigma = std::sqrt(c + d * s2);
        window.cases.push_back({&e, a + b * xbar + sigma * unit(rng)});
    }
    return window;
}

}  // namespace

TEST_CASE("ensemble_stats") {
    CHECK(ensemble_stats(make_ensemble({2, 2, 2})) ==
          std::pair<double, double>{2.0, 0.0});
    CHECK(ensemble_stats(make_ensemble({1, 3})) ==
          std::pair<double, double>{2.0, 2.0});
    const auto [m, v] = ensemble_stats(make_ensemble({1, 2, 3, 4}));
    CHECK(m == doctest::Approx(2.5));
    CHECK(v == doctest::Approx(5.0 / 3.0));
    CHECK_THROWS_AS(ensemble_stats(make_ensemble({1})), ValidationError);
}

TEST_CASE("gaussian_crps closed form") {
    SUBCASE("standard normal at the center") {
        CHECK(gaussian_crps({0.0, 1.0}, 0.0) ==
              doctest::Approx(2.0 * norm_pdf(0.0) - kInvSqrtPi).epsilon(1e-12));
        CHECK(gaussian_crps({0.0, 1.0}, 0.0) == doctest::Approx(0.23370).epsilon(1e-4));
    }
    SUBCASE("matches quadrature of the score integral") {
        std::mt19937_64 rng(101);
        std::uniform_real_distribution<double> mu(-5.0, 5.0);
        std::uniform_real_distribution<double> sigma(0.3, 3.0);
        for (int rep = 0; rep < 20; ++rep) {
            const GaussianPredictive dist{mu(rng), std::pow(sigma(rng), 2)};
            const double y = mu(rng);
            const double sd = std::sqrt(dist.variance);
            const double lo = std::min(dist.mean, y) - 12.0 * sd;
            const double hi = std::max(dist.mean, y) + 12.0 * sd;
            const double oracle = testutil::crps_quadrature(
                [&](double v) { return gaussian_cdf(dist, v); }, y, lo, hi, 40000);
            CHECK(std::abs(gaussian_crps(dist, y) - oracle) <= 1e-6);
        }
    }
    SUBCASE("scale equivariance") {
        const double base = gaussian_crps({1.0, 4.0}, 0.5);
        for (double k : {0.5, 2.0, 7.0}) {
            CHECK(gaussian_crps({k * 1.0, k * k * 4.0}, k * 0.5) ==
                  doctest::Approx(k * base).epsilon(1e-12));
        }
    }
    SUBCASE("far tails approach |y| - 1/sqrt(pi)") {
        const GaussianPredictive dist{0.0, 1.0};
        for (double y : {50.0, -50.0}) {
            CHECK(gaussian_crps(dist, y) ==
                  doctest::Approx(std::abs(y) - kInvSqrtPi).epsilon(1e-9));
        }
    }
    SUBCASE("non-positive variance rejected") {
        CHECK_THROWS_AS(gaussian_crps({0.0, 0.0}, 1.0), ValidationError);
    }
}

TEST_CASE("CRPS propriety smoke test") {
    // Mean CRPS against fixed N(0,1) draws is minimized at the truth cell of
    // a local (mu, sigma) grid.
    std::mt19937_64 rng(7);
    std::normal_distribution<double> unit(0.0, 1.0);
    std::vector<double> sample(4000);
    for (auto& v : sample) {
        v = unit(rng);
    }
    double best = 1e300;
    double best_mu = -99, best_sigma = -99;
    for (double mu : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
        for (double sigma : {0.5, 0.75, 1.0, 1.25, 1.5}) {
            double acc = 0.0;
            for (double y : sample) {
                acc += gaussian_crps({mu, sigma * sigma}, y);
            }
            if (acc < best) {
                best = acc;
                best_mu = mu;
                best_sigma = sigma;
            }
        }
    }
    CHECK(best_mu == 0.0);
    CHECK(best_sigma == 1.0);
}

TEST_CASE("fit_emos") {
    SUBCASE("recovers generating parameters") {
        const auto window = make_emos_window(1.0, 1.0, 0.5, 1.0, 1000, 5, 2024);
        const auto params = fit_emos(window.cases);
        CHECK(params.intercept == doctest::Approx(1.0).epsilon(0.1));
        CHECK(params.member_weights[0] == doctest::Approx(1.0).epsilon(0.1));
        CHECK(params.var_intercept == doctest::Approx(0.5).epsilon(0.2));
        CHECK(params.var_slope == doctest::Approx(1.0).epsilon(0.2));
    }
    SUBCASE("perfect forecasts drive variance to the floor") {
        std::vector<EnsembleForecast> ensembles(20);
        std::vector<TrainingCase> cases;
        std::mt19937_64 rng(3);
        std::normal_distribution<double> signal(0.0, 5.0);
        for (auto& e : ensembles) {
            const double base = signal(rng);
            e.members = {base - 0.01, base + 0.01};
            cases.push_back({&e, base});
        }
        const auto params = fit_emos(cases);
        CHECK(params.intercept == doctest::Approx(0.0).epsilon(0.02));
        CHECK(params.member_weights[0] == doctest::Approx(1.0).epsilon(0.02));
        const auto dist = emos_predict(params, ensembles.front());
        CHECK(dist.variance < 0.01);
    }
    SUBCASE("optimum beats the conventional start point") {
        const auto window = make_emos_window(0.3, 1.2, 1.0, 0.5, 100, 4, 9);
        const auto params = fit_emos(window.cases);
        auto objective = [&](const EmosParams& p) {
            double acc = 0.0;
            for (const auto& c : window.cases) {
                acc += gaussian_crps(emos_predict(p, *c.ensemble), c.observation);
            }
            return acc / window.cases.size();
        };
        EmosParams start;
        start.intercept = 0.0;
        start.member_weights = {1.0};
        start.var_intercept = 1.0;
        start.var_slope = 1.0;
        CHECK(objective(params) <= objective(start));
    }
    SUBCASE("translation consistency") {
        const auto window = make_emos_window(0.5, 0.9, 0.4, 0.8, 400, 5, 77);
        const auto params = fit_emos(window.cases);
        const double k = 10.0;
        auto shifted = window;
        std::vector<TrainingCase> shifted_cases;
        for (std::size_t t = 0; t < shifted.ensembles.size(); ++t) {
            for (auto& x : shifted.ensembles[t].members) {
                x += k;
            }
            shifted_cases.push_back(
                {&shifted.ensembles[t], window.cases[t].observation + k});
        }
        const auto params2 = fit_emos(shifted_cases);
        CHECK(params2.member_weights[0] ==
              doctest::Approx(params.member_weights[0]).epsilon(1e-3));
        CHECK(params2.intercept ==
              doctest::Approx(params.intercept + k * (1.0 - params.member_weights[0]))
                  .epsilon(1e-2));
        CHECK(params2.var_intercept ==
              doctest::Approx(params.var_intercept).epsilon(1e-2));
        CHECK(params2.var_slope == doctest::Approx(params.var_slope).epsilon(1e-2));
    }
    SUBCASE("degenerate window freezes the variance slope") {
        std::vector<EnsembleForecast> ensembles(10);
        std::vector<TrainingCase> cases;
        std::mt19937_64 rng(5);
        std::normal_distribution<double> unit(0.0, 1.0);
        for (std::size_t t = 0; t < ensembles.size(); ++t) {
            const double base = static_cast<double>(t);
            ensembles[t].members = {base, base};
            cases.push_back({&ensembles[t], base + unit(rng)});
        }
        const auto params = fit_emos(cases);
        CHECK(params.var_slope == 0.0);
        CHECK(params.var_intercept > 0.0);
    }
    SUBCASE("window too short") {
        std::vector<TrainingCase> cases(3);
        CHECK_THROWS_AS(fit_emos(cases), ValidationError);
    }
}

TEST_CASE("emos_predict") {
    SUBCASE("identity parameters") {
        EmosParams params;
        params.intercept = 0.0;
        params.member_weights = {1.0};
        params.var_intercept = 0.0;
        params.var_slope = 1.0;
        const auto dist = emos_predict(params, make_ensemble({1, 3}));
        CHECK(dist.mean == doctest::Approx(2.0));
        CHECK(dist.variance == doctest::Approx(2.0));
    }
    SUBCASE("plain arithmetic") {
        EmosParams params;
        params.intercept = 1.0;
        params.member_weights = {0.5};
        params.var_intercept = 0.2;
        params.var_slope = 0.0;
        const auto dist = emos_predict(params, make_ensemble({4, 4}));
        CHECK(dist.mean == doctest::Approx(3.0));
        CHECK(dist.variance == doctest::Approx(0.2));
    }
    SUBCASE("variance floor engages on a zero-spread ensemble") {
        EmosParams params;
        params.intercept = 0.0;
        params.member_weights = {1.0};
        params.var_intercept = 0.0;
        params.var_slope = 1.0;
        const auto dist = emos_predict(params, make_ensemble({2, 2, 2}));
        CHECK(dist.variance == kVarianceFloor);
        CHECK(dist.variance > 0.0);
    }
}
