#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pairrank/graph.hpp"

using namespace pairrank;

namespace {

ComparisonData edges(std::vector<std::string> ids, std::vector<WinCount> wins,
                     std::vector<TieCount> ties = {}) {
    return ComparisonData(std::move(ids), std::move(wins), std::move(ties));
}

}  // namespace

TEST(Scc, Cycle) {
    const auto data = edges({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
    EXPECT_EQ(strongly_connected_components(data), (Components{{0, 1, 2}}));
    EXPECT_TRUE(is_strongly_connected(data));
}

TEST(Scc, Chain) {
    const auto data = edges({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}});
    EXPECT_EQ(strongly_connected_components(data), (Components{{0}, {1}, {2}}));
    EXPECT_FALSE(is_strongly_connected(data));
}

TEST(Scc, PairPlusTail) {
    const auto data = edges({"a", "b", "c"}, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}});
    EXPECT_EQ(strongly_connected_components(data), (Components{{0, 1}, {2}}));
    EXPECT_EQ(strongly_connected_components(data), oracle::components_by_closure(data));
}

TEST(Scc, TiesAreEdgesBothWays) {
    const auto data = edges({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}}, {{0, 2, 1}});
    EXPECT_TRUE(is_strongly_connected(data));
}

TEST(Scc, IsolatedPlayers) {
    const auto data = edges({"a", "b", "c", "d"}, {{1, 3, 1}, {3, 1, 1}});
    EXPECT_EQ(strongly_connected_components(data), (Components{{0}, {1, 3}, {2}}));
}

TEST(Scc, AgreesWithReachabilityOracle) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + trial % 12;
        const double density = 0.05 + 0.3 * (trial % 7) / 6.0;
        const auto data = oracle::random_digraph(rng, n, density);
        EXPECT_EQ(strongly_connected_components(data), oracle::components_by_closure(data));
    }
}

TEST(Scc, LongChainDoesNotOverflow) {
    const std::size_t n = 200000;
    std::vector<std::string> ids;
    std::vector<WinCount> wins;
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back("p" + std::to_string(1000000 + i));
        wins.push_back({i, (i + 1) % n, 1.0});
    }
    const ComparisonData data(ids, wins);
    EXPECT_TRUE(is_strongly_connected(data));
}

TEST(Restrict, ConnectedInputUnchanged) {
    const auto data = edges({"a", "b", "c"}, {{0, 1, 2}, {1, 2, 1}, {2, 0, 1}}, {{0, 2, 1}});
    const Restriction r = restrict_to_largest_scc(data);
    EXPECT_TRUE(r.removed.empty());
    EXPECT_EQ(r.data.n_players(), 3u);
    EXPECT_EQ(r.data.wins().size(), data.wins().size());
    EXPECT_EQ(r.data.ties().size(), 1u);
}

TEST(Restrict, DropsTail) {
    const auto data = edges({"a", "b", "c"}, {{0, 1, 5}, {1, 0, 5}, {2, 0, 1}});
    const Restriction r = restrict_to_largest_scc(data);
    EXPECT_EQ(r.removed, std::vector<std::string>{"c"});
    ASSERT_EQ(r.data.n_players(), 2u);
    EXPECT_EQ(r.data.id(0), "a");
    EXPECT_EQ(r.data.win_count(0, 1), 5.0);
    EXPECT_EQ(r.data.total_wins(), 10.0);
}

TEST(Restrict, LargestTieBrokenBySmallestMember) {
    const auto data = edges({"a", "b", "c", "d"}, {{0, 1, 1}, {1, 0, 1}, {2, 3, 1}, {3, 2, 1}, {1, 2, 1}});
    const Restriction r = restrict_to_largest_scc(data);
    EXPECT_EQ(r.removed, (std::vector<std::string>{"c", "d"}));
}

TEST(Restrict, SixtySixToSixtyThree) {
    // A round robin among 63 players plus three who never lose.
    std::vector<std::string> ids;
    std::vector<WinCount> wins;
    for (std::size_t i = 0; i < 66; ++i) ids.push_back("m" + std::to_string(100 + i));
    for (std::size_t i = 0; i < 63; ++i) {
        wins.push_back({i, (i + 1) % 63, 1.0});
        wins.push_back({i, (i + 7) % 63, 2.0});
    }
    wins.push_back({63, 0, 3.0});
    wins.push_back({64, 10, 1.0});
    wins.push_back({65, 64, 1.0});
    const Restriction r = restrict_to_largest_scc(ComparisonData(ids, wins));
    EXPECT_EQ(r.data.n_players(), 63u);
    EXPECT_EQ(r.removed.size(), 3u);
    EXPECT_NO_THROW(validate(r.data, SolverSpec::newman()));
}

TEST(Restrict, OutputAlwaysValidates) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const auto data = oracle::random_digraph(rng, 2 + trial % 11, 0.25);
        const Restriction r = restrict_to_largest_scc(data);
        if (r.data.total_games() == 0.0) {
            // Only singletons: nothing to fit.
            EXPECT_EQ(r.data.n_players(), 1u);
            continue;
        }
        EXPECT_NO_THROW(validate(r.data, SolverSpec::newman()));
        EXPECT_EQ(r.data.n_players() + r.removed.size(), data.n_players());
    }
}

TEST(Restrict, ToPlayers) {
    const auto data = edges({"a", "b", "c"}, {{0, 1, 5}, {1, 2, 5}, {2, 0, 1}}, {{0, 2, 1}});
    const auto kept = restrict_to_players(data, {0, 2});
    EXPECT_EQ(kept.n_players(), 2u);
    EXPECT_EQ(kept.win_count(1, 0), 1.0);
    EXPECT_EQ(kept.tie_count(0, 1), 1.0);
    EXPECT_EQ(kept.total_wins(), 1.0);
}
