#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "aremos/errors.hpp"
#include "aremos/math.hpp"
#include "aremos/pooling.hpp"
#include "helpers.hpp"

using namespace aremos;

TEST_CASE("ar_emos_predict") {
    SUBCASE("white-noise models average to the innovation variance") {
        ARModifiedEnsemble modified;
        modified.members = {5.0, 5.0, 5.0};
        modified.member_models.assign(3, ARModel{0, 0.0, {}, 1.0});
        const auto dist = ar_emos_predict(modified);
        CHECK(dist.mean == doctest::Approx(5.0));
        CHECK(dist.variance == doctest::Approx(1.0));
    }
    SUBCASE("member variances are averaged") {
        ARModifiedEnsemble modified;
        modified.members = {1.0, 3.0};
        modified.member_models = {ARModel{0, 0.0, {}, 1.0}, ARModel{0, 0.0, {}, 3.0}};
        CHECK(ar_emos_predict(modified).variance == doctest::Approx(2.0));
    }
    SUBCASE("AR(1) members reproduce the truncated geometric sum") {
        ARModifiedEnsemble modified;
        modified.members = {2.0, 2.0};
        modified.member_models.assign(2, ARModel{1, 0.0, {0.5}, 1.0});
        const double expected = (1.0 - std::pow(0.25, 11)) / 0.75;
        CHECK(ar_emos_predict(modified).variance ==
              doctest::Approx(expected).epsilon(1e-9));
    }
    SUBCASE("degenerate fallback models floor the variance") {
        ARModifiedEnsemble modified;
        modified.members = {1.0};
        modified.member_models = {ARModel{0, 0.0, {}, 0.0}};
        CHECK(ar_emos_predict(modified).variance == kVarianceFloor);
    }
}

TEST_CASE("slp_cdf") {
    SUBCASE("single component median") {
        const SlpMixture mix{{{1.0, 2.0, 1.5}}, 1.0};
        CHECK(slp_cdf(mix, 2.0) == doctest::Approx(0.5));
    }
    SUBCASE("symmetric two-component mixture") {
        const SlpMixture mix{{{0.5, -1.0, 1.0}, {0.5, 1.0, 1.0}}, 1.0};
        CHECK(slp_cdf(mix, 0.0) == doctest::Approx(0.5));
    }
    SUBCASE("pinned hand-computed value") {
        const SlpMixture mix{{{0.5, 0.0, 1.0}, {0.5, 0.0, 2.0}}, 1.0};
        CHECK(slp_cdf(mix, 1.0) ==
              doctest::Approx(0.5 * (norm_cdf(1.0) + norm_cdf(0.5))));
        CHECK(slp_cdf(mix, 1.0) == doctest::Approx(0.76640).epsilon(1e-4));
    }
    SUBCASE("monotone with limits 0 and 1") {
        const SlpMixture mix{{{0.3, -2.0, 0.5}, {0.7, 1.0, 2.0}}, 0.8};
        double previous = 0.0;
        for (double y = -15.0; y <= 15.0; y += 0.05) {
            const double value = slp_cdf(mix, y);
            CHECK(value >= previous);
            previous = value;
        }
        CHECK(slp_cdf(mix, -100.0) == doctest::Approx(0.0));
        CHECK(slp_cdf(mix, 100.0) == doctest::Approx(1.0));
    }
    SUBCASE("spread 1 is the traditional linear pool") {
        const SlpMixture mix{{{0.4, -1.0, 1.2}, {0.6, 2.0, 0.7}}, 1.0};
        for (double y : {-2.0, 0.0, 1.5, 4.0}) {
            const double plain = 0.4 * norm_cdf((y + 1.0) / 1.2) +
                                 0.6 * norm_cdf((y - 2.0) / 0.7);
            CHECK(slp_cdf(mix, y) == doctest::Approx(plain).epsilon(1e-14));
        }
    }
}

TEST_CASE("mixture validation") {
    CHECK_THROWS_AS(validate_mixture({{}, 1.0}), ValidationError);
    CHECK_THROWS_AS(validate_mixture({{{1.0, 0.0, 1.0}}, 0.0}), ValidationError);
    CHECK_THROWS_AS(validate_mixture({{{0.6, 0.0, 1.0}, {0.6, 0.0, 1.0}}, 1.0}),
                    ValidationError);
    CHECK_NOTHROW(validate_mixture({{{0.5, 0.0, 1.0}, {0.5, 1.0, 2.0}}, 0.9}));
}

TEST_CASE("slp_moments") {
    SUBCASE("single component") {
        const SlpMixture mix{{{1.0, 3.0, 2.0}}, 0.9};
        const auto [mu, var] = slp_moments(mix);
        CHECK(mu == doctest::Approx(3.0));
        CHECK(var == doctest::Approx(0.81 * 4.0));
    }
    SUBCASE("symmetric mixture") {
        const SlpMixture mix{{{0.5, -1.0, 1.0}, {0.5, 1.0, 1.0}}, 1.0};
        const auto [mu, var] = slp_moments(mix);
        CHECK(mu == doctest::Approx(0.0));
        CHECK(var == doctest::Approx(2.0));
    }
    SUBCASE("hand computation") {
        const SlpMixture mix{{{0.3, 0.0, 1.0}, {0.7, 2.0, 2.0}}, 0.9};
        const auto [mu, var] = slp_moments(mix);
        CHECK(mu == doctest::Approx(1.4));
        CHECK(var == doctest::Approx(3.351));
    }
    SUBCASE("matches Monte-Carlo sampling") {
        const SlpMixture mix{{{0.35, -2.0, 0.8}, {0.65, 1.0, 1.6}}, 1.1};
        std::mt19937_64 rng(404);
        const std::size_t n = 1000000;
        double sum = 0.0, sum_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = slp_sample(mix, rng);
            sum += x;
            sum_sq += x * x;
        }
        const double mc_mean = sum / n;
        const double mc_var = sum_sq / n - mc_mean * mc_mean;
        const auto [mu, var] = slp_moments(mix);
        const double se_mean = std::sqrt(var / n);
        CHECK(std::abs(mc_mean - mu) < 3.0 * se_mean);
        // Crude 3-sigma band for the variance estimate of a mixture.
        CHECK(mc_var == doctest::Approx(var).epsilon(0.01));
    }
}

TEST_CASE("dss") {
    SUBCASE("zero at the mean with unit variance") {
        const SlpMixture mix{{{1.0, 4.0, 1.0}}, 1.0};
        CHECK(dss(mix, 4.0) == doctest::Approx(0.0));
    }
    SUBCASE("2 log sigma term") {
        const SlpMixture mix{{{1.0, 0.0, std::exp(1.0)}}, 1.0};
        CHECK(dss(mix, 0.0) == doctest::Approx(2.0));
    }
    SUBCASE("two-sigma residual") {
        const SlpMixture mix{{{1.0, 1.0, 3.0}}, 1.0};
        const auto [mu, var] = slp_moments(mix);
        const double y = mu + 2.0 * std::sqrt(var);
        CHECK(dss(mix, y) == doctest::Approx(4.0 + std::log(var)));
    }
    SUBCASE("invariant under component relabeling") {
        const SlpMixture a{{{0.3, -1.0, 1.0}, {0.7, 2.0, 0.5}}, 0.9};
        const SlpMixture b{{{0.7, 2.0, 0.5}, {0.3, -1.0, 1.0}}, 0.9};
        CHECK(dss(a, 0.3) == doctest::Approx(dss(b, 0.3)).epsilon(1e-14));
    }
}

TEST_CASE("slp_crps") {
    SUBCASE("single component reduces to the Gaussian closed form") {
        const SlpMixture mix{{{1.0, 0.0, 1.0}}, 1.0};
        CHECK(slp_crps(mix, 0.0) == doctest::Approx(0.23370).epsilon(1e-4));
        CHECK(slp_crps(mix, 0.7) ==
              doctest::Approx(gaussian_crps({0.0, 1.0}, 0.7)).epsilon(1e-12));
    }
    SUBCASE("half-normal mean identity") {
        for (double sigma : {0.5, 1.0, 2.5}) {
            CHECK(abs_normal_moment(0.0, sigma * sigma) ==
                  doctest::Approx(sigma * std::sqrt(2.0 / M_PI)).epsilon(1e-12));
        }
        CHECK(abs_normal_moment(-3.0, 0.0) == doctest::Approx(3.0));
    }
    SUBCASE("matches quadrature for a symmetric mixture") {
        const SlpMixture mix{{{0.5, -1.0, 1.0}, {0.5, 1.0, 1.0}}, 1.0};
        const double oracle = testutil::crps_quadrature(
            [&](double y) { return slp_cdf(mix, y); }, 0.0, -14.0, 14.0, 100000);
        CHECK(std::abs(slp_crps(mix, 0.0) - oracle) <= 1e-6);
    }
    SUBCASE("randomized mixtures match quadrature") {
        std::mt19937_64 rng(2025);
        std::uniform_real_distribution<double> location(-3.0, 3.0);
        std::uniform_real_distribution<double> scale(0.4, 2.0);
        std::uniform_real_distribution<double> weight(0.05, 0.95);
        std::uniform_real_distribution<double> spread(0.6, 1.4);
        for (int rep = 0; rep < 20; ++rep) {
            const double w1 = weight(rng);
            const SlpMixture mix{
                {{w1, location(rng), scale(rng)}, {1.0 - w1, location(rng), scale(rng)}},
                spread(rng)};
            const double y = location(rng);
            const double oracle = testutil::crps_quadrature(
                [&](double v) { return slp_cdf(mix, v); }, y, -40.0, 40.0, 100000);
            CHECK(std::abs(slp_crps(mix, y) - oracle) <= 1e-6);
            CHECK(slp_crps(mix, y) >= 0.0);
        }
    }
}

TEST_CASE("grid_search_slp") {
    auto grid = SlpSearchGrid::defaults();
    SUBCASE("identical components tie toward the balanced cell") {
        std::vector<std::pair<GaussianPredictive, GaussianPredictive>> components;
        std::vector<double> observations;
        std::mt19937_64 rng(8);
        std::normal_distribution<double> unit(0.0, 1.0);
        for (int t = 0; t < 50; ++t) {
            const GaussianPredictive dist{unit(rng), 1.0};
            components.emplace_back(dist, dist);
            observations.push_back(dist.mean + unit(rng));
        }
        const auto result = grid_search_slp(components, observations, grid);
        CHECK(result.best_weight == doctest::Approx(0.5));
        CHECK(result.table.size() == 99);
    }
    SUBCASE("badly biased second component pushes the weight to 1") {
        std::vector<std::pair<GaussianPredictive, GaussianPredictive>> components;
        std::vector<double> observations;
        std::mt19937_64 rng(9);
        std::normal_distribution<double> unit(0.0, 1.0);
        for (int t = 0; t < 300; ++t) {
            const double center = 3.0 * unit(rng);
            components.push_back(
                {GaussianPredictive{center, 1.0}, GaussianPredictive{center + 25.0, 1.0}});
            observations.push_back(center + unit(rng));
        }
        const auto result = grid_search_slp(components, observations, grid);
        CHECK(result.best_weight == doctest::Approx(1.0));
    }
    SUBCASE("symmetric under/over-dispersion lands in the interior") {
        std::vector<std::pair<GaussianPredictive, GaussianPredictive>> components;
        std::vector<double> observations;
        std::mt19937_64 rng(10);
        std::normal_distribution<double> unit(0.0, 1.0);
        for (int t = 0; t < 4000; ++t) {
            const double center = 3.0 * unit(rng);
            // True sd 1; one component too sharp, the other too wide.
            components.push_back(
                {GaussianPredictive{center, 0.36}, GaussianPredictive{center, 2.25}});
            observations.push_back(center + unit(rng));
        }
        const auto result = grid_search_slp(components, observations, grid);
        // The spread axis lets a single rescaled component win, so require
        // only that the chosen cell implies a predictive sd near the truth.
        const double implied_var =
            result.best_spread * result.best_spread *
            (result.best_weight * 0.36 + (1.0 - result.best_weight) * 2.25);
        CHECK(std::sqrt(implied_var) == doctest::Approx(1.0).epsilon(0.15));
    }
    SUBCASE("empty inputs rejected") {
        CHECK_THROWS_AS(grid_search_slp({}, {}, grid), ValidationError);
    }
}
