#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pairrank/bench.hpp"
#include "pairrank/rates.hpp"
#include "pairrank/solvers.hpp"

using namespace pairrank;

namespace {

ComparisonData pair_data(double w12, double w21) {
    return ComparisonData({"a", "b"}, {{0, 1, w12}, {1, 0, w21}});
}

std::vector<double> mle(const ComparisonData& data) {
    return reference_fit(data, SolverSpec::newman()).pi;
}

}  // namespace

TEST(Rates, TwoPlayerValues) {
    const auto data = pair_data(3, 1);
    const std::vector<double> pi{std::sqrt(3.0), 1 / std::sqrt(3.0)};
    EXPECT_NEAR(convergence_factor(data, pi, 0, 1.0), 0.75, 1e-8);
    EXPECT_NEAR(convergence_factor(data, pi, 1, 1.0), 0.25, 1e-8);
    EXPECT_NEAR(convergence_factor_zermelo(data, pi, 0), 0.75, 1e-15);
    EXPECT_NEAR(convergence_factor_zermelo(data, pi, 1), 0.25, 1e-15);
    EXPECT_NEAR(convergence_factor(data, pi, 0, 0.0), 0.0, 1e-8);
    EXPECT_NEAR(convergence_factor(data, pi, 1, 0.0), 0.0, 1e-8);
    EXPECT_NEAR(convergence_factor_max(data, pi, 1.0), 0.75, 1e-8);
    EXPECT_NEAR(convergence_factor_max(data, pi, 0.0), 0.0, 1e-8);
    EXPECT_NEAR(dlambda_dalpha(data, pi, 0, 1.0), 3.0 / 16.0, 1e-8);

    const RateReport report = rate_report(data, pi, 1.0);
    EXPECT_EQ(report.alpha, 1.0);
    ASSERT_EQ(report.lambda.size(), 2u);
    EXPECT_NEAR(report.lambda_max, 0.75, 1e-8);
    EXPECT_EQ(report.at, pi);
}

TEST(Rates, RequiresStationaryPoint) {
    const auto data = pair_data(3, 1);
    const std::vector<double> ones{1, 1};
    EXPECT_THROW(convergence_factor(data, ones, 0, 1.0), NotConverged);
    EXPECT_THROW(rate_report(data, ones, 0.0), NotConverged);
}

TEST(Rates, FiniteDifferenceMatchesClosedFormAndAnalytic) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const auto data = oracle::random_connected(rng, 3 + trial % 6);
        const auto pi = mle(data);
        for (Index i = 0; i < data.n_players(); ++i) {
            EXPECT_NEAR(convergence_factor(data, pi, i, 1.0), convergence_factor_zermelo(data, pi, i), 1e-5);
            for (double alpha : {0.0, 0.25, 0.5, 1.0, 2.0}) {
                EXPECT_NEAR(convergence_factor(data, pi, i, alpha), oracle::lambda_analytic(data, pi, i, alpha),
                            1e-6);
            }
        }
    }
}

TEST(Rates, IncreasingInAlphaAndBounded) {
    std::mt19937_64 rng(56);
    for (int trial = 0; trial < 20; ++trial) {
        const auto data = oracle::random_connected(rng, 3 + trial % 6);
        const auto pi = mle(data);
        for (Index i = 0; i < data.n_players(); ++i) {
            double previous = -INFINITY;
            for (double alpha : {0.0, 0.25, 0.5, 1.0, 2.0}) {
                const double lambda = convergence_factor(data, pi, i, alpha);
                EXPECT_GT(lambda, previous);
                EXPECT_LT(std::fabs(lambda), 1.0);
                previous = lambda;
            }
            EXPECT_GT(convergence_factor_zermelo(data, pi, i), 0.0);
        }
        EXPECT_GT(convergence_factor_max(data, pi, 2.0), convergence_factor_max(data, pi, 1.0));
        for (double alpha : {0.0, 0.5, 1.0, 2.0}) EXPECT_LT(convergence_factor_max(data, pi, alpha), 1.0);
    }
}

TEST(Rates, SlopeMatchesFiniteDifference) {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 20; ++trial) {
        const auto data = oracle::random_connected(rng, 3 + trial % 6);
        const auto pi = mle(data);
        for (Index i = 0; i < data.n_players(); ++i) {
            for (double alpha : {0.25, 0.5, 1.0, 2.0}) {
                const double h = 1e-4;
                const double fd = (oracle::lambda_analytic(data, pi, i, alpha + h) -
                                   oracle::lambda_analytic(data, pi, i, alpha - h)) / (2 * h);
                const double slope = dlambda_dalpha(data, pi, i, alpha);
                EXPECT_GT(slope, 0.0);
                EXPECT_NEAR(slope, fd, 1e-4 * std::fabs(fd));
            }
        }
    }
}

TEST(Rates, NegativeFactorsOccurForSmallAlpha) {
    std::mt19937_64 rng(58);
    int negative = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto data = oracle::random_connected(rng, 3 + trial % 6, 9, 0.4);
        const auto pi = mle(data);
        const RateReport report = rate_report(data, pi, 0.0);
        for (double lambda : report.lambda) {
            EXPECT_LT(std::fabs(lambda), 1.0);
            negative += lambda < 0.0;
        }
    }
    EXPECT_GT(negative, 0);
}

TEST(Rates, EmpiricalDecayTracksLambdaMax) {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 5; ++trial) {
        const auto data = oracle::random_connected(rng, 12, 9, 0.8);
        const auto pi_hat = mle(data);
        for (double alpha : {0.5, 1.0, 2.0}) {
            const double lambda_max = convergence_factor_max(data, pi_hat, alpha);
            SolverSpec spec;
            spec.alpha = alpha;
            spec.init = Init::logistic;
            spec.seed = 100 + trial;
            Strengths state = initial_state(data, spec);
            const UpdateRule rule = rule_for(spec);
            std::vector<double> rms;
            for (int k = 0; k < 400; ++k) {
                sweep_in_place(data, state, rule);
                const double r = rms_p1_deviation(state.pi, pi_hat);
                if (r < 1e-12) break;
                rms.push_back(r);
            }
            ASSERT_GE(rms.size(), 10u) << "alpha " << alpha;
            const std::size_t last = rms.size() - 1;
            const double ratio = std::pow(rms[last] / rms[last - 5], 1.0 / 5.0);
            EXPECT_GT(ratio, lambda_max / 2.0) << "alpha " << alpha;
            EXPECT_LT(ratio, lambda_max * 2.0) << "alpha " << alpha;
        }
    }
}
