#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pairrank/graph.hpp"

using namespace pairrank;

namespace {

ComparisonData two_players(double w12, double w21) {
    ComparisonDataBuilder b;
    b.add_player("a");
    b.add_player("b");
    if (w12 > 0) b.add_wins("a", "b", w12);
    if (w21 > 0) b.add_wins("b", "a", w21);
    return b.build();
}

ComparisonData three_cycle() {
    ComparisonDataBuilder b;
    b.add_wins("a", "b", 1);
    b.add_wins("b", "c", 1);
    b.add_wins("c", "a", 1);
    return b.build();
}

}  // namespace

TEST(ComparisonData, SortsIdsAndRemapsIndices) {
    ComparisonData data({"zed", "amy", "kim"}, {{0, 1, 2.0}, {1, 2, 1.0}});
    ASSERT_EQ(data.n_players(), 3u);
    EXPECT_EQ(data.id(0), "amy");
    EXPECT_EQ(data.id(1), "kim");
    EXPECT_EQ(data.id(2), "zed");
    EXPECT_EQ(data.win_count(2, 0), 2.0);
    EXPECT_EQ(data.win_count(0, 1), 1.0);
    EXPECT_EQ(data.index_of("kim"), Index{1});
    EXPECT_FALSE(data.index_of("bob").has_value());
}

TEST(ComparisonData, SumsDuplicatesAndDropsZeros) {
    ComparisonData data({"a", "b"}, {{0, 1, 2.0}, {0, 1, 1.0}, {1, 0, 0.0}});
    EXPECT_EQ(data.win_count(0, 1), 3.0);
    EXPECT_EQ(data.wins().size(), 1u);
    EXPECT_EQ(data.total_wins(), 3.0);
}

TEST(ComparisonData, TiesAreSymmetric) {
    ComparisonData data({"a", "b", "c"}, {{0, 1, 1.0}}, {{2, 0, 2.0}, {0, 2, 1.0}});
    EXPECT_EQ(data.tie_count(0, 2), 3.0);
    EXPECT_EQ(data.tie_count(2, 0), 3.0);
    ASSERT_EQ(data.ties().size(), 1u);
    EXPECT_EQ(data.ties()[0].first, 0u);
    EXPECT_EQ(data.total_ties(), 3.0);
    EXPECT_EQ(data.total_games(), 4.0);
    EXPECT_EQ(data.games_tied(2), 3.0);
    EXPECT_TRUE(data.has_ties());
}

TEST(ComparisonData, OpponentListsMatchCounts) {
    ComparisonData data({"a", "b", "c"}, {{0, 1, 2.0}, {1, 0, 1.0}, {2, 0, 4.0}}, {{1, 2, 1.0}});
    auto opp = data.opponents(0);
    ASSERT_EQ(opp.size(), 2u);
    EXPECT_EQ(opp[0].index, 1u);
    EXPECT_EQ(opp[0].wins, 2.0);
    EXPECT_EQ(opp[0].losses, 1.0);
    EXPECT_EQ(opp[1].index, 2u);
    EXPECT_EQ(opp[1].losses, 4.0);
    auto opp_c = data.opponents(2);
    ASSERT_EQ(opp_c.size(), 2u);
    EXPECT_EQ(opp_c[1].index, 1u);
    EXPECT_EQ(opp_c[1].ties, 1.0);
    EXPECT_EQ(data.games_won(2), 4.0);
    EXPECT_EQ(data.games_lost(0), 5.0);
}

TEST(ComparisonData, RejectsInvalidInput) {
    EXPECT_THROW(ComparisonData({"a", "b"}, {{0, 0, 1.0}}), SelfMatch);
    EXPECT_THROW(ComparisonData({"a", "b"}, {}, {{1, 1, 1.0}}), SelfMatch);
    EXPECT_THROW(ComparisonData({"a", "b"}, {{0, 1, -1.0}}), NegativeCount);
    EXPECT_THROW(ComparisonData({"a", "b"}, {{0, 1, NAN}}), InvalidData);
    EXPECT_THROW(ComparisonData({"a", "b"}, {{0, 1, INFINITY}}), InvalidData);
    EXPECT_THROW(ComparisonData({"a", "a"}, {{0, 1, 1.0}}), InvalidData);
    EXPECT_THROW(ComparisonData({"a", "b"}, {{0, 2, 1.0}}), InvalidData);
    EXPECT_THROW(ComparisonData({}, {}), InvalidData);
}

TEST(ComparisonDataBuilder, BuildsFromIds) {
    ComparisonDataBuilder b;
    b.add_wins("b", "a", 1);
    b.add_wins("a", "b", 2);
    b.add_wins("a", "b", 1);
    b.add_ties("b", "a", 1);
    b.add_player("c");
    const ComparisonData data = b.build();
    EXPECT_EQ(data.n_players(), 3u);
    EXPECT_EQ(data.win_count(0, 1), 3.0);
    EXPECT_EQ(data.win_count(1, 0), 1.0);
    EXPECT_EQ(data.tie_count(0, 1), 1.0);
    EXPECT_THROW(b.add_wins("a", "a", 1), SelfMatch);
    EXPECT_THROW(b.add_ties("c", "c", 1), SelfMatch);
}

TEST(Strengths, DerivedQuantities) {
    Strengths s{{3.0, 1.0 / 3.0}, std::nullopt};
    EXPECT_DOUBLE_EQ(s.score(0), std::log(3.0));
    EXPECT_DOUBLE_EQ(s.p1(0), 0.75);
    EXPECT_DOUBLE_EQ(s.p1(1), 0.25);
    EXPECT_EQ(s.p1s().size(), 2u);
    EXPECT_DOUBLE_EQ(s.scores()[1], -std::log(3.0));
}

TEST(Normalize, Examples) {
    auto a = normalize_geometric_mean(std::vector<double>{2.0, 8.0});
    EXPECT_NEAR(a[0], 0.5, 1e-15);
    EXPECT_NEAR(a[1], 2.0, 1e-15);

    auto b = normalize_geometric_mean(std::vector<double>{1.0, 1.0, 1.0});
    for (double x : b) EXPECT_DOUBLE_EQ(x, 1.0);

    for (double c : {1e-3, 0.7, 42.0, 1e5}) {
        auto r = normalize_geometric_mean(std::vector<double>{std::sqrt(3.0) * c, c / std::sqrt(3.0)});
        EXPECT_NEAR(r[0], std::sqrt(3.0), 1e-14);
        EXPECT_NEAR(r[1], 1.0 / std::sqrt(3.0), 1e-14);
    }
}

TEST(Normalize, RejectsInvalidEntries) {
    EXPECT_THROW(normalize_geometric_mean(std::vector<double>{1.0, 0.0}), InvalidStrengths);
    EXPECT_THROW(normalize_geometric_mean(std::vector<double>{1.0, -2.0}), InvalidStrengths);
    EXPECT_THROW(normalize_geometric_mean(std::vector<double>{1.0, INFINITY}), InvalidStrengths);
    EXPECT_THROW(normalize_geometric_mean(std::vector<double>{NAN}), InvalidStrengths);
}

TEST(Normalize, IdempotentAndRatioPreserving) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> size(1, 40);
        std::uniform_real_distribution<double> s(-30.0, 30.0);
        std::vector<double> pi(size(rng));
        for (double& p : pi) p = std::exp(s(rng));
        const auto once = normalize_geometric_mean(pi);
        const auto twice = normalize_geometric_mean(once);
        double log_sum = 0.0;
        for (std::size_t i = 0; i < pi.size(); ++i) {
            log_sum += std::log(once[i]);
            EXPECT_NEAR(twice[i] / once[i], 1.0, 1e-12);
            EXPECT_NEAR((once[i] / once[0]) / (pi[i] / pi[0]), 1.0, 1e-12);
        }
        EXPECT_NEAR(log_sum, 0.0, 1e-10);
    }
}

TEST(SolverSpec, Checks) {
    SolverSpec spec;
    EXPECT_NO_THROW(spec.check());
    spec.alpha = -0.5;
    EXPECT_THROW(spec.check(), InvalidSpec);
    spec.alpha = 0.5;
    spec.stop.tolerance = 0.0;
    EXPECT_THROW(spec.check(), InvalidSpec);
    spec.stop.tolerance = 1e-8;
    spec.mode = Mode::map;
    spec.ties = TiesModel::davidson;
    EXPECT_THROW(spec.check(), InvalidSpec);
    spec.ties = TiesModel::newman;
    EXPECT_THROW(spec.check(), InvalidSpec);
    spec.ties = TiesModel::half_win;
    EXPECT_NO_THROW(spec.check());
}

TEST(SolverSpec, DescribeAndParse) {
    EXPECT_EQ(describe(SolverSpec::newman()), "newman");
    EXPECT_EQ(describe(SolverSpec::zermelo(Mode::map)), "map-zermelo");
    SolverSpec half;
    half.alpha = 0.5;
    EXPECT_EQ(describe(half), "alpha=0.5");
    SolverSpec ties;
    ties.ties = TiesModel::davidson;
    EXPECT_EQ(describe(ties), "davidson");
    ties.ties = TiesModel::newman;
    EXPECT_EQ(describe(ties), "newman-ties");

    EXPECT_EQ(parse_algorithm("newman"), 0.0);
    EXPECT_EQ(parse_algorithm("zermelo"), 1.0);
    EXPECT_EQ(parse_algorithm("alpha=2"), 2.0);
    EXPECT_FALSE(parse_algorithm("alpha=-1").has_value());
    EXPECT_FALSE(parse_algorithm("alpha=x").has_value());
    EXPECT_FALSE(parse_algorithm("fast").has_value());
    EXPECT_EQ(parse_mode("map"), Mode::map);
    EXPECT_EQ(parse_ties_model("half-win"), TiesModel::half_win);
    EXPECT_EQ(parse_ties_model("newman"), TiesModel::newman);
    EXPECT_EQ(parse_init("logistic"), Init::logistic);
    EXPECT_FALSE(parse_mode("MLE?").has_value());
}

TEST(Validate, CycleIsAccepted) {
    EXPECT_NO_THROW(validate(three_cycle(), SolverSpec::newman()));
}

TEST(Validate, OneSidedPairNeedsPrior) {
    const ComparisonData data = two_players(5, 0);
    try {
        validate(data, SolverSpec::newman());
        FAIL() << "expected NotStronglyConnected";
    } catch (const NotStronglyConnected& e) {
        EXPECT_EQ(e.components().size(), 2u);
        EXPECT_NE(std::string(e.what()).find("--mode map"), std::string::npos);
    }
    EXPECT_NO_THROW(validate(data, SolverSpec::newman(Mode::map)));
}

TEST(Validate, TiesCountBothWays) {
    ComparisonData data({"a", "b"}, {{0, 1, 1.0}}, {{0, 1, 1.0}});
    SolverSpec spec;
    spec.ties = TiesModel::davidson;
    EXPECT_NO_THROW(validate(data, spec));
    spec.ties = TiesModel::none;
    // Ignoring the ties leaves a one-sided pair.
    EXPECT_THROW(validate(data, spec), NotStronglyConnected);
}

TEST(Validate, WarnsWhenTiesModelHasNoTies) {
    SolverSpec spec;
    spec.ties = TiesModel::davidson;
    const auto report = validate(three_cycle(), spec);
    EXPECT_EQ(report.warnings.size(), 1u);
}

TEST(Validate, AllTiedIsDegenerateForNewmanTies) {
    ComparisonData data({"a", "b"}, {}, {{0, 1, 3.0}});
    SolverSpec spec;
    spec.ties = TiesModel::newman;
    EXPECT_THROW(validate(data, spec), DegenerateNu);
}

TEST(Validate, MleNeedsGames) {
    ComparisonData empty({"a"}, {});
    EXPECT_THROW(validate(empty, SolverSpec::newman()), InvalidData);
    EXPECT_NO_THROW(validate(empty, SolverSpec::newman(Mode::map)));
}

TEST(Validate, AgreesWithComponentCount) {
    std::mt19937_64 rng(5);
    int accepted = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto data = oracle::random_digraph(rng, 2 + trial % 7, 0.35);
        bool ok = true;
        try {
            validate(data, SolverSpec::newman());
        } catch (const NotStronglyConnected&) {
            ok = false;
        } catch (const InvalidData&) {
            ok = false;
        }
        EXPECT_EQ(ok, strongly_connected_components(data).size() == 1);
        accepted += ok;
    }
    EXPECT_GT(accepted, 10);
}
