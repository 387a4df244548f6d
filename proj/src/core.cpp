#include "pairrank/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pairrank/graph.hpp"

namespace pairrank {

namespace {

void check_count(double count, const std::string& what) {
    if (!std::isfinite(count)) {
        throw InvalidData(what + ": count is not finite");
    }
    if (count < 0.0) {
        throw NegativeCount(what + ": negative count " + std::to_string(count));
    }
}

}  // namespace

ComparisonData::ComparisonData(std::vector<std::string> ids, std::vector<WinCount> wins,
                               std::vector<TieCount> ties) {
    const std::size_t n = ids.size();
    if (n == 0) {
        throw InvalidData("comparison data needs at least one player");
    }

    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return ids[a] < ids[b]; });
    std::vector<Index> remap(n);
    ids_.reserve(n);
    for (Index k = 0; k < n; ++k) {
        remap[order[k]] = k;
        ids_.push_back(std::move(ids[order[k]]));
    }
    for (Index k = 1; k < n; ++k) {
        if (ids_[k] == ids_[k - 1]) {
            throw InvalidData("duplicate player id '" + ids_[k] + "'");
        }
    }

    auto label = [&](Index a, Index b) { return "(" + ids_[a] + ", " + ids_[b] + ")"; };

    for (auto& w : wins) {
        if (w.winner >= n || w.loser >= n) {
            throw InvalidData("win entry refers to a player index out of range");
        }
        w.winner = remap[w.winner];
        w.loser = remap[w.loser];
        if (w.winner == w.loser) {
            throw SelfMatch("self-match for player '" + ids_[w.winner] + "'");
        }
        check_count(w.count, "wins " + label(w.winner, w.loser));
    }
    for (auto& t : ties) {
        if (t.first >= n || t.second >= n) {
            throw InvalidData("tie entry refers to a player index out of range");
        }
        t.first = remap[t.first];
        t.second = remap[t.second];
        if (t.first == t.second) {
            throw SelfMatch("self-match for player '" + ids_[t.first] + "'");
        }
        if (t.first > t.second) {
            std::swap(t.first, t.second);
        }
        check_count(t.count, "ties " + label(t.first, t.second));
    }

    std::sort(wins.begin(), wins.end(), [](const WinCount& a, const WinCount& b) {
        return a.winner != b.winner ? a.winner < b.winner : a.loser < b.loser;
    });
    for (const auto& w : wins) {
        if (!wins_.empty() && wins_.back().winner == w.winner && wins_.back().loser == w.loser) {
            wins_.back().count += w.count;
        } else {
            wins_.push_back(w);
        }
    }
    std::erase_if(wins_, [](const WinCount& w) { return w.count == 0.0; });

    std::sort(ties.begin(), ties.end(), [](const TieCount& a, const TieCount& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    for (const auto& t : ties) {
        if (!ties_.empty() && ties_.back().first == t.first && ties_.back().second == t.second) {
            ties_.back().count += t.count;
        } else {
            ties_.push_back(t);
        }
    }
    std::erase_if(ties_, [](const TieCount& t) { return t.count == 0.0; });

    // Adjacency: one Opponent record per (player, opponent) pair in either
    // direction, gathered as (i, j) keys then merged.
    struct Entry {
        Index i;
        Index j;
        double wins;
        double losses;
        double ties;
    };
    std::vector<Entry> entries;
    entries.reserve(2 * (wins_.size() + ties_.size()));
    for (const auto& w : wins_) {
        entries.push_back({w.winner, w.loser, w.count, 0.0, 0.0});
        entries.push_back({w.loser, w.winner, 0.0, w.count, 0.0});
    }
    for (const auto& t : ties_) {
        entries.push_back({t.first, t.second, 0.0, 0.0, t.count});
        entries.push_back({t.second, t.first, 0.0, 0.0, t.count});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });

    offsets_.assign(n + 1, 0);
    won_.assign(n, 0.0);
    lost_.assign(n, 0.0);
    tied_.assign(n, 0.0);
    for (std::size_t k = 0; k < entries.size();) {
        const Entry& head = entries[k];
        Opponent opp{head.j, 0.0, 0.0, 0.0};
        for (; k < entries.size() && entries[k].i == head.i && entries[k].j == head.j; ++k) {
            opp.wins += entries[k].wins;
            opp.losses += entries[k].losses;
            opp.ties += entries[k].ties;
        }
        opponents_.push_back(opp);
        ++offsets_[head.i + 1];
        won_[head.i] += opp.wins;
        lost_[head.i] += opp.losses;
        tied_[head.i] += opp.ties;
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());

    for (const auto& w : wins_) total_wins_ += w.count;
    for (const auto& t : ties_) total_ties_ += t.count;
}

std::optional<Index> ComparisonData::index_of(std::string_view id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == ids_.end() || *it != id) {
        return std::nullopt;
    }
    return static_cast<Index>(it - ids_.begin());
}

namespace {

const Opponent* find_opponent(std::span<const Opponent> opps, Index j) {
    auto it = std::lower_bound(opps.begin(), opps.end(), j,
                               [](const Opponent& o, Index key) { return o.index < key; });
    return (it != opps.end() && it->index == j) ? &*it : nullptr;
}

}  // namespace

double ComparisonData::win_count(Index winner, Index loser) const {
    const Opponent* o = find_opponent(opponents(winner), loser);
    return o ? o->wins : 0.0;
}

double ComparisonData::tie_count(Index a, Index b) const {
    const Opponent* o = find_opponent(opponents(a), b);
    return o ? o->ties : 0.0;
}

Index ComparisonDataBuilder::add_player(const std::string& id) {
    auto it = index_.find(id);
    if (it != index_.end()) {
        return it->second;
    }
    const Index k = ids_.size();
    ids_.push_back(id);
    index_.emplace(id, k);
    return k;
}

void ComparisonDataBuilder::add_wins(const std::string& winner, const std::string& loser,
                                     double count) {
    if (winner == loser) {
        throw SelfMatch("self-match for player '" + winner + "'");
    }
    check_count(count, "wins (" + winner + ", " + loser + ")");
    const Index a = add_player(winner);
    const Index b = add_player(loser);
    wins_.push_back({a, b, count});
}

void ComparisonDataBuilder::add_ties(const std::string& a, const std::string& b, double count) {
    if (a == b) {
        throw SelfMatch("self-match for player '" + a + "'");
    }
    check_count(count, "ties (" + a + ", " + b + ")");
    const Index i = add_player(a);
    const Index j = add_player(b);
    ties_.push_back({i, j, count});
}

ComparisonData ComparisonDataBuilder::build() const {
    return ComparisonData(ids_, wins_, ties_);
}

double Strengths::score(Index i) const { return std::log(pi[i]); }

std::vector<double> Strengths::scores() const {
    std::vector<double> out(pi.size());
    std::transform(pi.begin(), pi.end(), out.begin(), [](double p) { return std::log(p); });
    return out;
}

std::vector<double> Strengths::p1s() const {
    std::vector<double> out(pi.size());
    std::transform(pi.begin(), pi.end(), out.begin(), p1_of);
    return out;
}

void check_strengths(std::span<const double> pi, std::size_t n) {
    if (pi.size() != n) {
        throw InvalidStrengths("strength vector has " + std::to_string(pi.size()) +
                               " entries, expected " + std::to_string(n));
    }
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (!(pi[i] > 0.0) || !std::isfinite(pi[i])) {
            throw InvalidStrengths("strength of player " + std::to_string(i) +
                                   " is not positive and finite");
        }
    }
}

void normalize_geometric_mean_in_place(std::span<double> pi) {
    check_strengths(pi, pi.size());
    if (pi.empty()) {
        return;
    }
    double log_sum = 0.0;
    for (double p : pi) log_sum += std::log(p);
    const double scale = std::exp(-log_sum / static_cast<double>(pi.size()));
    for (double& p : pi) p *= scale;
}

std::vector<double> normalize_geometric_mean(std::span<const double> pi) {
    std::vector<double> out(pi.begin(), pi.end());
    normalize_geometric_mean_in_place(out);
    return out;
}

SolverSpec SolverSpec::newman(Mode mode) {
    SolverSpec spec;
    spec.alpha = 0.0;
    spec.mode = mode;
    return spec;
}

SolverSpec SolverSpec::zermelo(Mode mode) {
    SolverSpec spec;
    spec.alpha = 1.0;
    spec.mode = mode;
    return spec;
}

void SolverSpec::check() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw InvalidSpec("alpha must be finite and >= 0");
    }
    if (!(stop.tolerance > 0.0)) {
        throw InvalidSpec("tolerance must be > 0");
    }
    if (mode == Mode::map && estimates_nu()) {
        throw InvalidSpec("MAP estimation is not defined for the " + to_string(ties) +
                          " ties model; use --ties half-win or --mode mle");
    }
}

namespace {

std::string format_alpha(double alpha) {
    std::ostringstream os;
    os << alpha;
    return os.str();
}

}  // namespace

std::string describe(const SolverSpec& spec) {
    std::string name;
    if (spec.ties == TiesModel::davidson) {
        name = "davidson";
    } else if (spec.ties == TiesModel::newman) {
        name = "newman-ties";
    } else if (spec.alpha == 0.0) {
        name = "newman";
    } else if (spec.alpha == 1.0) {
        name = "zermelo";
    } else {
        name = "alpha=" + format_alpha(spec.alpha);
    }
    if (spec.ties == TiesModel::half_win) {
        name += "+half-win";
    }
    return spec.mode == Mode::map ? "map-" + name : name;
}

std::string to_string(Mode mode) { return mode == Mode::mle ? "mle" : "map"; }

std::string to_string(TiesModel ties) {
    switch (ties) {
        case TiesModel::none: return "none";
        case TiesModel::davidson: return "davidson";
        case TiesModel::newman: return "newman";
        case TiesModel::half_win: return "half-win";
    }
    return "none";
}

std::string to_string(Init init) { return init == Init::ones ? "ones" : "logistic"; }

std::string to_string(Termination termination) {
    return termination == Termination::converged ? "converged" : "max_sweeps";
}

std::optional<Mode> parse_mode(std::string_view text) {
    if (text == "mle") return Mode::mle;
    if (text == "map") return Mode::map;
    return std::nullopt;
}

std::optional<TiesModel> parse_ties_model(std::string_view text) {
    if (text == "none") return TiesModel::none;
    if (text == "davidson") return TiesModel::davidson;
    if (text == "newman") return TiesModel::newman;
    if (text == "half-win") return TiesModel::half_win;
    return std::nullopt;
}

std::optional<Init> parse_init(std::string_view text) {
    if (text == "ones") return Init::ones;
    if (text == "logistic") return Init::logistic;
    return std::nullopt;
}

std::optional<double> parse_algorithm(std::string_view text) {
    if (text == "newman") return 0.0;
    if (text == "zermelo") return 1.0;
    constexpr std::string_view prefix = "alpha=";
    if (text.substr(0, prefix.size()) != prefix) {
        return std::nullopt;
    }
    const std::string value(text.substr(prefix.size()));
    if (value.empty()) {
        return std::nullopt;
    }
    char* end = nullptr;
    const double alpha = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || !std::isfinite(alpha) || alpha < 0.0) {
        return std::nullopt;
    }
    return alpha;
}

ValidationReport validate(const ComparisonData& data, const SolverSpec& spec) {
    spec.check();
    ValidationReport report;

    if (spec.estimates_nu() && data.total_ties() == 0.0) {
        report.warnings.push_back(
            "model mismatch: the " + to_string(spec.ties) +
            " ties model was requested but the data contain no ties; nu is fixed at 0");
    }
    if (spec.ties == TiesModel::newman && data.has_ties() && data.total_wins() == 0.0) {
        throw DegenerateNu("every game is tied, so the maximum-likelihood nu diverges");
    }
    if (spec.mode == Mode::map) {
        return report;
    }

    if (data.total_games() == 0.0) {
        throw InvalidData("maximum-likelihood fit needs at least one game");
    }
    std::optional<ComparisonData> decisive;
    if (spec.ties == TiesModel::none && data.has_ties()) {
        report.warnings.push_back(
            "the data contain ties but no ties model was selected; ties are ignored");
        decisive.emplace(std::vector<std::string>(data.ids().begin(), data.ids().end()),
                         std::vector<WinCount>(data.wins().begin(), data.wins().end()));
    }
    const ComparisonData& network = decisive ? *decisive : data;
    if (network.total_wins() == 0.0 && network.total_ties() == 0.0) {
        throw InvalidData("maximum-likelihood fit needs at least one game");
    }
    Components components = strongly_connected_components(network);
    if (components.size() > 1) {
        std::ostringstream os;
        os << "interaction network is not strongly connected (" << components.size()
           << " components):";
        std::size_t shown = 0;
        for (const auto& c : components) {
            if (shown++ == 10) {
                os << " ...";
                break;
            }
            os << " {";
            for (std::size_t k = 0; k < c.size(); ++k) {
                if (k == 5) {
                    os << ", ... (" << c.size() << " players)";
                    break;
                }
                os << (k ? ", " : "") << network.id(c[k]);
            }
            os << "}";
        }
        os << "; no maximum-likelihood estimate exists. Use --mode map, or restrict the data "
              "with `scc --restrict`";
        throw NotStronglyConnected(os.str(), std::move(components));
    }
    return report;
}

}  // namespace pairrank
