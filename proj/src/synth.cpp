#include "pairrank/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pairrank/graph.hpp"

namespace pairrank {

double Random::uniform_open() {
    for (;;) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        if (u > 0.0) {
            return u;
        }
    }
}

std::uint64_t Random::below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x < limit) {
            return x % bound;
        }
    }
}

double logistic_quantile(double u) { return std::log(u / (1.0 - u)); }

std::vector<double> sample_logistic_scores(std::size_t n, std::uint64_t seed) {
    Random rng(seed);
    std::vector<double> scores(n);
    for (double& s : scores) {
        s = logistic_quantile(rng.uniform_open());
    }
    return scores;
}

std::uint64_t init_stream_seed(std::uint64_t seed) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string to_string(RedrawPolicy policy) {
    return policy == RedrawPolicy::whole_set ? "whole-set" : "offending-games";
}

std::optional<RedrawPolicy> parse_redraw_policy(std::string_view text) {
    if (text == "offending-games") return RedrawPolicy::offending_games;
    if (text == "whole-set") return RedrawPolicy::whole_set;
    return std::nullopt;
}

void SynthSpec::check() const {
    if (n_players < 2) {
        throw InvalidSpec("synthetic tournaments need at least 2 players");
    }
    if (n_games < 1) {
        throw InvalidSpec("synthetic tournaments need at least 1 game");
    }
    if (ties && (!(nu_true >= 0.0) || !std::isfinite(nu_true))) {
        throw InvalidSpec("nu must be finite and >= 0");
    }
}

std::vector<std::string> synthetic_ids(std::size_t n) {
    const std::size_t width = std::to_string(n > 0 ? n - 1 : 0).size();
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string digits = std::to_string(i);
        ids.push_back("p" + std::string(width - digits.size(), '0') + digits);
    }
    return ids;
}

namespace {

struct Game {
    Index first;
    Index second;
    // 0: first wins, 1: second wins, 2: tie
    int outcome;
};

class GameSampler {
public:
    GameSampler(const SynthSpec& spec, const std::vector<double>& scores, bool ties)
        : n_(spec.n_players), nu_(ties ? spec.nu_true : 0.0), ties_(ties), pi_(n_), root_(n_) {
        for (std::size_t i = 0; i < n_; ++i) {
            pi_[i] = std::exp(scores[i]);
            root_[i] = std::sqrt(pi_[i]);
        }
    }

    Game game(Random& rng) const {
        Index i;
        Index j;
        do {
            i = rng.below(n_);
            j = rng.below(n_);
        } while (i == j);
        if (i > j) std::swap(i, j);
        return {i, j, outcome(rng, i, j)};
    }

    int outcome(Random& rng, Index i, Index j) const {
        const double u = rng.uniform_open();
        const double tie_weight = ties_ ? 2.0 * nu_ * root_[i] * root_[j] : 0.0;
        const double total = pi_[i] + pi_[j] + tie_weight;
        if (u < pi_[i] / total) return 0;
        if (u < (pi_[i] + pi_[j]) / total) return 1;
        return 2;
    }

private:
    std::size_t n_;
    double nu_;
    bool ties_;
    std::vector<double> pi_;
    std::vector<double> root_;
};

ComparisonData assemble(const std::vector<std::string>& ids, const std::vector<Game>& games) {
    std::vector<WinCount> wins;
    std::vector<TieCount> tie_counts;
    wins.reserve(games.size());
    for (const Game& g : games) {
        if (g.outcome == 0) {
            wins.push_back({g.first, g.second, 1.0});
        } else if (g.outcome == 1) {
            wins.push_back({g.second, g.first, 1.0});
        } else {
            tie_counts.push_back({g.first, g.second, 1.0});
        }
    }
    return ComparisonData(ids, std::move(wins), std::move(tie_counts));
}

SyntheticTournament generate(const SynthSpec& spec, std::vector<double> true_scores, bool ties) {
    spec.check();
    const std::size_t n = spec.n_players;
    if (true_scores.size() != n) {
        throw InvalidSpec("true score vector length does not match the number of players");
    }
    // Scores come first in the stream; games continue it.
    Random rng(spec.seed);
    for (std::size_t k = 0; k < n; ++k) rng.uniform_open();

    const GameSampler sampler(spec, true_scores, ties);
    const std::vector<std::string> ids = synthetic_ids(n);
    std::vector<Game> games(spec.n_games);
    for (Game& g : games) g = sampler.game(rng);

    for (std::size_t round = 0;; ++round) {
        ComparisonData data = assemble(ids, games);
        const Components components = strongly_connected_components(data);
        if (components.size() == 1) {
            std::optional<double> nu;
            if (ties) nu = spec.nu_true;
            return SyntheticTournament{std::move(data), std::move(true_scores), nu, round};
        }
        if (round == spec.max_redraws) {
            break;
        }
        if (spec.redraw == RedrawPolicy::whole_set) {
            for (Game& g : games) g = sampler.game(rng);
            continue;
        }
        const auto largest = std::max_element(
            components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.size() < b.size(); });
        std::vector<char> inside(n, 0);
        for (Index i : *largest) inside[i] = 1;
        for (Game& g : games) {
            if (!inside[g.first] || !inside[g.second]) {
                g.outcome = sampler.outcome(rng, g.first, g.second);
            }
        }
    }
    throw RedrawLimitExceeded("games not strongly connected after " +
                              std::to_string(spec.max_redraws) +
                              " redraws; increase --games or --max-redraws");
}

}  // namespace

SyntheticTournament generate_tournament(const SynthSpec& spec) {
    return generate(spec, sample_logistic_scores(spec.n_players, spec.seed), false);
}

SyntheticTournament generate_tournament(const SynthSpec& spec, std::vector<double> true_scores) {
    return generate(spec, std::move(true_scores), false);
}

SyntheticTournament generate_tournament_ties(const SynthSpec& spec) {
    return generate(spec, sample_logistic_scores(spec.n_players, spec.seed), true);
}

SyntheticTournament generate_tournament_ties(const SynthSpec& spec,
                                             std::vector<double> true_scores) {
    return generate(spec, std::move(true_scores), true);
}

}  // namespace pairrank
