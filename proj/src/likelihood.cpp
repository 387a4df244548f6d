#include "pairrank/likelihood.hpp"

#include <cmath>

#include "summation.hpp"

namespace pairrank {

using detail::CompensatedSum;

namespace {

void check_nu(double nu, const ComparisonData& data) {
    if (!std::isfinite(nu) || nu < 0.0 || (nu == 0.0 && data.has_ties())) {
        throw InvalidStrengths("tie parameter nu must be positive and finite");
    }
}

}  // namespace

double log_likelihood(const ComparisonData& data, std::span<const double> pi) {
    check_strengths(pi, data.n_players());
    CompensatedSum total;
    for (const auto& w : data.wins()) {
        total += w.count * (std::log(pi[w.winner]) - std::log(pi[w.winner] + pi[w.loser]));
    }
    return total.value();
}

double gradient_residual(const ComparisonData& data, std::span<const double> pi, Index i) {
    check_strengths(pi, data.n_players());
    double games = 0.0;
    for (const auto& o : data.opponents(i)) {
        games += (o.wins + o.losses) / (pi[i] + pi[o.index]);
    }
    return data.games_won(i) / pi[i] - games;
}

double log_posterior(const ComparisonData& data, std::span<const double> pi) {
    CompensatedSum total;
    total += log_likelihood(data, pi);
    for (double p : pi) {
        total += std::log(p) - 2.0 * std::log(p + 1.0);
    }
    return total.value();
}

double gradient_residual_map(const ComparisonData& data, std::span<const double> pi, Index i) {
    return gradient_residual(data, pi, i) + 1.0 / pi[i] - 2.0 / (pi[i] + 1.0);
}

double log_likelihood_ties(const ComparisonData& data, std::span<const double> pi, double nu) {
    check_strengths(pi, data.n_players());
    check_nu(nu, data);
    CompensatedSum total;
    for (Index i = 0; i < data.n_players(); ++i) {
        const double log_pi = std::log(pi[i]);
        for (const auto& o : data.opponents(i)) {
            const Index j = o.index;
            const double a_ij = o.wins + 0.5 * o.ties;
            if (a_ij == 0.0) {
                continue;
            }
            const double denom = pi[i] + pi[j] + 2.0 * nu * std::sqrt(pi[i] * pi[j]);
            total += a_ij * (log_pi - std::log(denom));
        }
    }
    if (data.total_ties() > 0.0) {
        // (1/2) sum over ordered pairs of t_ij is the number of tied games.
        total += std::log(2.0 * nu) * data.total_ties();
    }
    return total.value();
}

double gradient_residual_ties(const ComparisonData& data, std::span<const double> pi, double nu,
                              Index i) {
    check_strengths(pi, data.n_players());
    check_nu(nu, data);
    double own = 0.0;
    double both = 0.0;
    for (const auto& o : data.opponents(i)) {
        const Index j = o.index;
        const double a_ij = o.wins + 0.5 * o.ties;
        const double a_ji = o.losses + 0.5 * o.ties;
        const double denom = pi[i] + pi[j] + 2.0 * nu * std::sqrt(pi[i] * pi[j]);
        own += a_ij;
        both += (a_ij + a_ji) * (1.0 + nu * std::sqrt(pi[j] / pi[i])) / denom;
    }
    return own / pi[i] - both;
}

double nu_residual(const ComparisonData& data, std::span<const double> pi, double nu) {
    check_strengths(pi, data.n_players());
    check_nu(nu, data);
    if (nu == 0.0) {
        return 0.0;
    }
    CompensatedSum expected;
    for (Index i = 0; i < data.n_players(); ++i) {
        for (const auto& o : data.opponents(i)) {
            const Index j = o.index;
            const double a_ij = o.wins + 0.5 * o.ties;
            const double root = std::sqrt(pi[i] * pi[j]);
            expected += a_ij * 2.0 * root / (pi[i] + pi[j] + 2.0 * nu * root);
        }
    }
    return data.total_ties() / nu - expected.value();
}

ComparisonData with_fictitious_games(const ComparisonData& data, const std::string& anchor_id) {
    if (data.index_of(anchor_id)) {
        throw InvalidData("anchor id '" + anchor_id + "' collides with an existing player");
    }
    const std::size_t n = data.n_players();
    std::vector<std::string> ids(data.ids().begin(), data.ids().end());
    ids.push_back(anchor_id);
    std::vector<WinCount> wins(data.wins().begin(), data.wins().end());
    for (Index i = 0; i < n; ++i) {
        wins.push_back({i, n, 1.0});
        wins.push_back({n, i, 1.0});
    }
    std::vector<TieCount> ties(data.ties().begin(), data.ties().end());
    return ComparisonData(std::move(ids), std::move(wins), std::move(ties));
}

double Objective::operator()(std::span<const double> pi, std::optional<double> nu) const {
    switch (kind_) {
        case ObjectiveKind::mle: return log_likelihood(*data_, pi);
        case ObjectiveKind::map: return log_posterior(*data_, pi);
        case ObjectiveKind::ties_mle:
            if (!nu) {
                throw InvalidStrengths("ties objective needs a value for nu");
            }
            return log_likelihood_ties(*data_, pi, *nu);
    }
    return 0.0;
}

}  // namespace pairrank
