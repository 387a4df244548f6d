#include "pairrank/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pairrank/synth.hpp"
#include "summation.hpp"

namespace pairrank {

namespace {

constexpr double kMinStrength = 1e-280;
constexpr double kMaxStrength = 1e280;

double checked(double numerator, double denominator, Index i) {
    if (denominator == 0.0) {
        throw DegenerateStrength("player " + std::to_string(i) +
                                     " has no losses: its strength diverges to infinity",
                                 i);
    }
    if (numerator == 0.0) {
        throw DegenerateStrength(
            "player " + std::to_string(i) + " has no wins: its strength collapses to zero", i);
    }
    const double value = numerator / denominator;
    if (!(value >= kMinStrength && value <= kMaxStrength)) {
        throw DegenerateStrength("strength of player " + std::to_string(i) +
                                     " left the representable range",
                                 i);
    }
    return value;
}

double alpha_kernel(std::span<const Opponent> opps, std::span<const double> pi, Index i,
                    double alpha, bool with_prior) {
    const double own = pi[i];
    double numerator = 0.0;
    double denominator = 0.0;
    for (const auto& o : opps) {
        const double other = pi[o.index];
        const double inv = 1.0 / (own + other);
        numerator += o.wins * (alpha * own + other) * inv;
        denominator += (alpha * o.wins + o.losses) * inv;
    }
    if (with_prior) {
        // One win and one loss against a strength-1 opponent.
        const double inv = 1.0 / (own + 1.0);
        numerator += (alpha * own + 1.0) * inv;
        denominator += (alpha + 1.0) * inv;
    }
    return checked(numerator, denominator, i);
}

// `root` holds sqrt(pi) for every player.
double ties_pi_kernel(std::span<const Opponent> opps, std::span<const double> pi,
                      std::span<const double> root, double nu, Index i, TiesVariant variant) {
    const double own = pi[i];
    const double own_root = root[i];
    double numerator = 0.0;
    double denominator = 0.0;
    for (const auto& o : opps) {
        const Index j = o.index;
        const double cross = nu * own_root * root[j];
        const double inv = 1.0 / (own + pi[j] + 2.0 * cross);
        const double a_ij = o.wins + 0.5 * o.ties;
        const double a_ji = o.losses + 0.5 * o.ties;
        const double lean = 1.0 + nu * root[j] / own_root;
        if (variant == TiesVariant::davidson) {
            numerator += a_ij;
            denominator += (a_ij + a_ji) * lean * inv;
        } else {
            numerator += a_ij * (pi[j] + cross) * inv;
            denominator += a_ji * lean * inv;
        }
    }
    return checked(numerator, denominator, i);
}

double ties_nu_kernel(const ComparisonData& data, std::span<const double> pi,
                      std::span<const double> root, double nu, TiesVariant variant) {
    if (data.total_ties() == 0.0) {
        return 0.0;
    }
    detail::CompensatedSum numerator;
    detail::CompensatedSum denominator;
    for (Index i = 0; i < data.n_players(); ++i) {
        for (const auto& o : data.opponents(i)) {
            const Index j = o.index;
            const double cross = root[i] * root[j];
            const double inv = 1.0 / (pi[i] + pi[j] + 2.0 * nu * cross);
            if (variant == TiesVariant::davidson) {
                denominator += (o.wins + 0.5 * o.ties) * 2.0 * cross * inv;
            } else {
                numerator += 0.5 * o.ties * (pi[i] + pi[j]) * inv;
                denominator += o.wins * 2.0 * cross * inv;
            }
        }
    }
    if (variant == TiesVariant::davidson) {
        numerator += data.total_ties();
    }
    if (denominator.value() == 0.0) {
        throw DegenerateNu("no decisive games: the maximum-likelihood tie parameter diverges");
    }
    const double value = numerator.value() / denominator.value();
    if (!std::isfinite(value)) {
        throw DegenerateNu("tie parameter left the representable range");
    }
    return value;
}

std::vector<double> square_roots(std::span<const double> pi) {
    std::vector<double> root(pi.size());
    std::transform(pi.begin(), pi.end(), root.begin(), [](double p) { return std::sqrt(p); });
    return root;
}

void check_alpha(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw InvalidSpec("alpha must be finite and >= 0");
    }
}

void check_nu_value(double nu) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) {
        throw InvalidStrengths("tie parameter nu must be finite and >= 0");
    }
}

}  // namespace

ObjectiveKind UpdateRule::objective() const noexcept {
    switch (kind) {
        case Kind::alpha: return ObjectiveKind::mle;
        case Kind::map: return ObjectiveKind::map;
        case Kind::davidson:
        case Kind::newman_ties: return ObjectiveKind::ties_mle;
    }
    return ObjectiveKind::mle;
}

UpdateRule rule_for(const SolverSpec& spec) {
    switch (spec.ties) {
        case TiesModel::davidson: return UpdateRule::davidson();
        case TiesModel::newman: return UpdateRule::newman_ties();
        case TiesModel::none:
        case TiesModel::half_win: break;
    }
    return spec.mode == Mode::map ? UpdateRule::map_alpha(spec.alpha)
                                  : UpdateRule::alpha_family(spec.alpha);
}

double update_alpha(const ComparisonData& data, std::span<const double> pi, Index i, double alpha) {
    check_alpha(alpha);
    check_strengths(pi, data.n_players());
    return alpha_kernel(data.opponents(i), pi, i, alpha, false);
}

double update_map(const ComparisonData& data, std::span<const double> pi, Index i, double alpha) {
    check_alpha(alpha);
    check_strengths(pi, data.n_players());
    return alpha_kernel(data.opponents(i), pi, i, alpha, true);
}

double update_ties_pi(const ComparisonData& data, std::span<const double> pi, double nu, Index i,
                      TiesVariant variant) {
    check_strengths(pi, data.n_players());
    check_nu_value(nu);
    const std::vector<double> root = square_roots(pi);
    return ties_pi_kernel(data.opponents(i), pi, root, nu, i, variant);
}

double update_ties_nu(const ComparisonData& data, std::span<const double> pi, double nu,
                      TiesVariant variant) {
    check_strengths(pi, data.n_players());
    check_nu_value(nu);
    const std::vector<double> root = square_roots(pi);
    return ties_nu_kernel(data, pi, root, nu, variant);
}

void sweep_in_place(const ComparisonData& data, Strengths& state, const UpdateRule& rule) {
    std::vector<double>& pi = state.pi;
    const std::size_t n = data.n_players();

    switch (rule.kind) {
        case UpdateRule::Kind::alpha:
        case UpdateRule::Kind::map: {
            const bool prior = rule.kind == UpdateRule::Kind::map;
            for (Index i = 0; i < n; ++i) {
                pi[i] = alpha_kernel(data.opponents(i), pi, i, rule.alpha, prior);
            }
            break;
        }
        case UpdateRule::Kind::davidson:
        case UpdateRule::Kind::newman_ties: {
            const TiesVariant variant = rule.kind == UpdateRule::Kind::davidson
                                            ? TiesVariant::davidson
                                            : TiesVariant::newman;
            if (!state.nu) throw InvalidStrengths("ties rules need a current tie parameter nu");
            const double nu = *state.nu;
            check_nu_value(nu);
            std::vector<double> root = square_roots(pi);
            for (Index i = 0; i < n; ++i) {
                pi[i] = ties_pi_kernel(data.opponents(i), pi, root, nu, i, variant);
                root[i] = std::sqrt(pi[i]);
            }
            state.nu = ties_nu_kernel(data, pi, root, nu, variant);
            break;
        }
    }
    if (rule.normalizes()) {
        normalize_geometric_mean_in_place(pi);
    }
}

Strengths sweep(const ComparisonData& data, Strengths state, const UpdateRule& rule) {
    check_strengths(state.pi, data.n_players());
    if (rule.uses_nu()) {
        check_nu_value(state.nu.value_or(1.0));
    } else {
        check_alpha(rule.alpha);
    }
    sweep_in_place(data, state, rule);
    return state;
}

double objective_value(const ComparisonData& data, const Strengths& state, const UpdateRule& rule) {
    switch (rule.objective()) {
        case ObjectiveKind::mle: return log_likelihood(data, state.pi);
        case ObjectiveKind::map: return log_posterior(data, state.pi);
        case ObjectiveKind::ties_mle: return log_likelihood_ties(data, state.pi, state.nu.value_or(1.0));
    }
    return 0.0;
}

ComparisonData split_ties_as_half_wins(const ComparisonData& data) {
    std::vector<std::string> ids(data.ids().begin(), data.ids().end());
    std::vector<WinCount> wins(data.wins().begin(), data.wins().end());
    for (const auto& t : data.ties()) {
        wins.push_back({t.first, t.second, 0.5 * t.count});
        wins.push_back({t.second, t.first, 0.5 * t.count});
    }
    return ComparisonData(std::move(ids), std::move(wins));
}

Strengths initial_state(const ComparisonData& data, const SolverSpec& spec) {
    Strengths state;
    const std::size_t n = data.n_players();
    if (spec.init == Init::ones) {
        state.pi.assign(n, 1.0);
    } else {
        state.pi = sample_logistic_scores(n, init_stream_seed(spec.seed));
        for (double& s : state.pi) s = std::exp(s);
    }
    if (spec.mode == Mode::mle) {
        normalize_geometric_mean_in_place(state.pi);
    }
    if (spec.estimates_nu()) {
        state.nu = 1.0;
    }
    return state;
}

namespace {

double max_p1_change(std::span<const double> before, std::span<const double> after) {
    double worst = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i) {
        worst = std::max(worst, std::fabs(p1_of(after[i]) - p1_of(before[i])));
    }
    return worst;
}

double rms_p1(std::span<const double> pi, std::span<const double> reference) {
    double total = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        const double d = p1_of(pi[i]) - p1_of(reference[i]);
        total += d * d;
    }
    return pi.empty() ? 0.0 : std::sqrt(total / static_cast<double>(pi.size()));
}

}  // namespace

FitResult fit_from(const ComparisonData& data, const UpdateRule& rule, Strengths start,
                   const StopRule& stop, const FitOptions& options) {
    check_strengths(start.pi, data.n_players());
    if (rule.uses_nu() && !start.nu) {
        start.nu = 1.0;
    }
    FitResult result;
    result.terminated = Termination::max_sweeps;
    Strengths state = start;
    std::vector<double> previous;

    for (std::size_t k = 1; k <= stop.max_sweeps; ++k) {
        previous = state.pi;
        const double previous_nu = state.nu.value_or(0.0);
        sweep_in_place(data, state, rule);
        result.sweeps_used = k;

        const double delta = max_p1_change(previous, state.pi);
        const double delta_nu = std::fabs(state.nu.value_or(0.0) - previous_nu);
        if (options.trace != TraceLevel::none) {
            result.trace.push_back({k, objective_value(data, state, rule), delta, 0.0});
        }
        if (delta < stop.tolerance && delta_nu < stop.tolerance) {
            result.terminated = Termination::converged;
            break;
        }
    }

    if (options.trace == TraceLevel::full && !result.trace.empty()) {
        // Sweeps are deterministic, so replaying from the start reproduces the
        // trajectory exactly and lets each row be compared with the end state.
        Strengths replay = std::move(start);
        for (auto& row : result.trace) {
            sweep_in_place(data, replay, rule);
            row.rms_p1 = rms_p1(replay.pi, state.pi);
        }
    }
    result.objective = objective_value(data, state, rule);
    result.strengths = std::move(state);
    return result;
}

FitResult fit(const ComparisonData& data, const SolverSpec& spec, const FitOptions& options) {
    ValidationReport report = validate(data, spec);
    const UpdateRule rule = rule_for(spec);
    FitResult result;
    if (spec.ties == TiesModel::half_win) {
        const ComparisonData prepared = split_ties_as_half_wins(data);
        result = fit_from(prepared, rule, initial_state(prepared, spec), spec.stop, options);
    } else {
        result = fit_from(data, rule, initial_state(data, spec), spec.stop, options);
    }
    result.warnings = std::move(report.warnings);
    return result;
}

}  // namespace pairrank
