#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pairrank/core.hpp"

namespace pairrank {

// 64-bit Mersenne Twister with distribution code kept here, so a seed gives
// the same stream on every standard library.
class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    // Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform_open();
    // Uniform integer in [0, bound), bound > 0, without modulo bias.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

// Inverse CDF of the standard logistic distribution: log(u / (1 - u)).
double logistic_quantile(double u);

// n i.i.d. standard logistic scores from a generator seeded with `seed`.
std::vector<double> sample_logistic_scores(std::size_t n, std::uint64_t seed);

// Seed of the logistic initialization stream used by fits, kept distinct from
// the synthetic-data stream so `--seed` does not start a fit at the truth.
std::uint64_t init_stream_seed(std::uint64_t seed);

enum class RedrawPolicy {
    // Replay the games touching any player outside the largest strongly
    // connected component, keeping their pairings.
    offending_games,
    // Discard and redraw the entire game set.
    whole_set,
};

std::string to_string(RedrawPolicy policy);
std::optional<RedrawPolicy> parse_redraw_policy(std::string_view text);

struct SynthSpec {
    std::size_t n_players = 1000;
    std::size_t n_games = 50'000;
    bool ties = false;
    double nu_true = 0.5;
    std::uint64_t seed = 0;
    std::size_t max_redraws = 1000;
    RedrawPolicy redraw = RedrawPolicy::offending_games;

    void check() const;
};

struct SyntheticTournament {
    ComparisonData data;
    std::vector<double> true_scores;
    std::optional<double> true_nu;
    // Redraw rounds needed before the games were strongly connected.
    std::size_t redraws = 0;
};

// Zero-padded ids ("p000" ... "p999") whose sorted order is the index order.
std::vector<std::string> synthetic_ids(std::size_t n);

// n_games games between uniformly chosen distinct players, winners drawn from
// the Bradley-Terry probabilities. Games are redrawn under spec.redraw while
// the result is not strongly connected. Throws RedrawLimitExceeded.
SyntheticTournament generate_tournament(const SynthSpec& spec);
SyntheticTournament generate_tournament(const SynthSpec& spec, std::vector<double> true_scores);

// Wins, losses and ties drawn from the Davidson probabilities at nu_true.
SyntheticTournament generate_tournament_ties(const SynthSpec& spec);
SyntheticTournament generate_tournament_ties(const SynthSpec& spec,
                                             std::vector<double> true_scores);

}  // namespace pairrank
