#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pairrank/error.hpp"

namespace pairrank {

struct WinCount {
    Index winner;
    Index loser;
    double count;
};

// Stored once per unordered pair with first < second.
struct TieCount {
    Index first;
    Index second;
    double count;
};

// Aggregated record of one player against one opponent: wins = w_ij,
// losses = w_ji, ties = t_ij.
struct Opponent {
    Index index;
    double wins;
    double losses;
    double ties;
};

// Immutable pairwise-comparison counts over N players.
//
// Player ids are kept in sorted order and a player's dense index is its
// position in that order. Counts are non-negative reals so that tied games can
// be folded in as half wins. Duplicate entries are summed, zero entries are
// dropped, and every player keeps a contiguous adjacency list of opponents
// for the solver sweeps.
class ComparisonData {
public:
    // `wins` and `ties` index into `ids` as given; ids are re-sorted and the
    // indices remapped. Throws InvalidData (or SelfMatch / NegativeCount).
    ComparisonData(std::vector<std::string> ids, std::vector<WinCount> wins,
                   std::vector<TieCount> ties = {});

    std::size_t n_players() const noexcept { return ids_.size(); }
    std::span<const std::string> ids() const noexcept { return ids_; }
    const std::string& id(Index i) const { return ids_.at(i); }
    std::optional<Index> index_of(std::string_view id) const;

    // Sorted by (winner, loser); every count is positive.
    std::span<const WinCount> wins() const noexcept { return wins_; }
    // Sorted by (first, second) with first < second; every count is positive.
    std::span<const TieCount> ties() const noexcept { return ties_; }

    // Opponents of player i in ascending index order.
    std::span<const Opponent> opponents(Index i) const {
        return {opponents_.data() + offsets_[i], opponents_.data() + offsets_[i + 1]};
    }

    double win_count(Index winner, Index loser) const;
    double tie_count(Index a, Index b) const;

    double games_won(Index i) const { return won_[i]; }
    double games_lost(Index i) const { return lost_[i]; }
    double games_tied(Index i) const { return tied_[i]; }

    double total_wins() const noexcept { return total_wins_; }
    // Each tied game counted once.
    double total_ties() const noexcept { return total_ties_; }
    double total_games() const noexcept { return total_wins_ + total_ties_; }
    bool has_ties() const noexcept { return !ties_.empty(); }

private:
    std::vector<std::string> ids_;
    std::vector<WinCount> wins_;
    std::vector<TieCount> ties_;
    std::vector<std::size_t> offsets_;
    std::vector<Opponent> opponents_;
    std::vector<double> won_;
    std::vector<double> lost_;
    std::vector<double> tied_;
    double total_wins_ = 0.0;
    double total_ties_ = 0.0;
};

// Accumulates counts keyed by string id.
class ComparisonDataBuilder {
public:
    Index add_player(const std::string& id);
    void add_wins(const std::string& winner, const std::string& loser, double count);
    void add_ties(const std::string& a, const std::string& b, double count);
    ComparisonData build() const;

private:
    std::map<std::string, Index, std::less<>> index_;
    std::vector<std::string> ids_;
    std::vector<WinCount> wins_;
    std::vector<TieCount> ties_;
};

struct Strengths {
    std::vector<double> pi;
    std::optional<double> nu;

    std::size_t size() const noexcept { return pi.size(); }
    double score(Index i) const;
    // Probability of beating a player of strength 1.
    double p1(Index i) const { return pi[i] / (pi[i] + 1.0); }
    std::vector<double> scores() const;
    std::vector<double> p1s() const;
};

inline double p1_of(double pi) { return pi / (pi + 1.0); }

// Rescales so that the product of strengths is one. Throws InvalidStrengths on
// non-positive or non-finite entries.
std::vector<double> normalize_geometric_mean(std::span<const double> pi);
void normalize_geometric_mean_in_place(std::span<double> pi);

// Throws InvalidStrengths unless pi has n entries, all positive and finite.
void check_strengths(std::span<const double> pi, std::size_t n);

enum class Mode { mle, map };
enum class TiesModel { none, davidson, newman, half_win };
enum class Init { ones, logistic };

struct StopRule {
    // Bound on max_i |delta p1_i| (and |delta nu|) between consecutive sweeps.
    double tolerance = 1e-10;
    std::size_t max_sweeps = 100'000;
};

struct SolverSpec {
    // Member of the update family; 0 is the fast iteration, 1 is Zermelo's.
    double alpha = 0.0;
    Mode mode = Mode::mle;
    TiesModel ties = TiesModel::none;
    Init init = Init::ones;
    std::uint64_t seed = 0;
    StopRule stop;

    static SolverSpec newman(Mode mode = Mode::mle);
    static SolverSpec zermelo(Mode mode = Mode::mle);

    // Throws InvalidSpec.
    void check() const;
    // True when the fit carries a tie parameter nu.
    bool estimates_nu() const noexcept {
        return ties == TiesModel::davidson || ties == TiesModel::newman;
    }
};

// Short label: "newman", "zermelo", "alpha=0.5", "davidson", "newman-ties",
// with a "map-" prefix in MAP mode.
std::string describe(const SolverSpec& spec);
std::string to_string(Mode mode);
std::string to_string(TiesModel ties);
std::string to_string(Init init);
std::optional<Mode> parse_mode(std::string_view text);
std::optional<TiesModel> parse_ties_model(std::string_view text);
std::optional<Init> parse_init(std::string_view text);
// Accepts "newman", "zermelo" or "alpha=<x>".
std::optional<double> parse_algorithm(std::string_view text);

struct ValidationReport {
    std::vector<std::string> warnings;
};

// Checks that the data admits a fit under `spec`. In MLE mode the interaction
// digraph (ties counted in both directions) must be strongly connected and
// hold at least one game. Throws NotStronglyConnected, InvalidData or
// InvalidSpec; non-fatal findings are returned as warnings.
ValidationReport validate(const ComparisonData& data, const SolverSpec& spec);

enum class Termination { converged, max_sweeps };
std::string to_string(Termination termination);

struct TraceRow {
    std::size_t sweep = 0;
    double objective = 0.0;
    double max_delta_p1 = 0.0;
    // RMS p1 deviation from the final state of the same fit.
    double rms_p1 = 0.0;
};

struct FitResult {
    Strengths strengths;
    std::size_t sweeps_used = 0;
    std::vector<TraceRow> trace;
    Termination terminated = Termination::converged;
    double objective = 0.0;
    std::vector<std::string> warnings;
};

}  // namespace pairrank
