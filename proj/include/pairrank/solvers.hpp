#pragma once

#include <span>

#include "pairrank/core.hpp"
#include "pairrank/likelihood.hpp"

namespace pairrank {

enum class TiesVariant { davidson, newman };

// One coordinate update rule. `alpha` selects the member of the family for
// the alpha and map kinds and is ignored for the ties kinds.
struct UpdateRule {
    enum class Kind { alpha, map, davidson, newman_ties };

    Kind kind = Kind::alpha;
    double alpha = 0.0;

    static UpdateRule alpha_family(double alpha) { return {Kind::alpha, alpha}; }
    static UpdateRule newman() { return alpha_family(0.0); }
    static UpdateRule zermelo() { return alpha_family(1.0); }
    static UpdateRule map_alpha(double alpha) { return {Kind::map, alpha}; }
    static UpdateRule map_newman() { return map_alpha(0.0); }
    static UpdateRule map_zermelo() { return map_alpha(1.0); }
    static UpdateRule davidson() { return {Kind::davidson, 1.0}; }
    static UpdateRule newman_ties() { return {Kind::newman_ties, 0.0}; }

    bool uses_nu() const noexcept { return kind == Kind::davidson || kind == Kind::newman_ties; }
    // MAP posteriors are not scale invariant and are never renormalized.
    bool normalizes() const noexcept { return kind != Kind::map; }
    ObjectiveKind objective() const noexcept;
};

UpdateRule rule_for(const SolverSpec& spec);

// pi_i' = [sum_j w_ij (alpha pi_i + pi_j)/(pi_i + pi_j)] / [sum_j (alpha w_ij + w_ji)/(pi_i + pi_j)].
// Throws DegenerateStrength when the numerator or denominator vanishes.
double update_alpha(const ComparisonData& data, std::span<const double> pi, Index i, double alpha);

// The same family applied to the data plus one fictitious win and one
// fictitious loss against a strength-1 opponent. alpha = 0 gives
//   [1/(pi_i+1) + sum_j w_ij pi_j/(pi_i+pi_j)] / [1/(pi_i+1) + sum_j w_ji/(pi_i+pi_j)],
// alpha = 1 gives
//   [1 + sum_j w_ij] / [2/(pi_i+1) + sum_j (w_ij+w_ji)/(pi_i+pi_j)].
double update_map(const ComparisonData& data, std::span<const double> pi, Index i, double alpha);

// Strength update under the Davidson ties model, a_ij = w_ij + t_ij / 2.
double update_ties_pi(const ComparisonData& data, std::span<const double> pi, double nu, Index i,
                      TiesVariant variant);

// Tie-parameter update. Returns 0 when the data hold no ties. Throws
// DegenerateNu for the newman variant when no game was decisive.
double update_ties_nu(const ComparisonData& data, std::span<const double> pi, double nu,
                      TiesVariant variant);

// One asynchronous pass: players are updated in ascending index order, each
// seeing the values already updated in this pass, then nu once (ties rules),
// then the strengths are renormalized to geometric mean 1 (all but MAP).
void sweep_in_place(const ComparisonData& data, Strengths& state, const UpdateRule& rule);
Strengths sweep(const ComparisonData& data, Strengths state, const UpdateRule& rule);

// Value of the rule's objective at `state`.
double objective_value(const ComparisonData& data, const Strengths& state, const UpdateRule& rule);

// Rewrites every tie as half a win for each side and drops the ties.
ComparisonData split_ties_as_half_wins(const ComparisonData& data);

// Starting point of a fit: all ones or logistic scores from the spec's seed;
// nu = 1 when estimated. MLE starts are normalized.
Strengths initial_state(const ComparisonData& data, const SolverSpec& spec);

enum class TraceLevel {
    none,       // no per-sweep rows
    objective,  // objective and max |delta p1| per sweep
    full,       // also RMS p1 deviation from the final state (replays the fit)
};

struct FitOptions {
    TraceLevel trace = TraceLevel::full;
};

// Validates, initializes and sweeps until max_i |delta p1_i| < tolerance (and
// |delta nu| < tolerance) or the sweep budget is spent. Degeneracies propagate
// as exceptions; running out of sweeps returns the last state flagged
// Termination::max_sweeps.
FitResult fit(const ComparisonData& data, const SolverSpec& spec, const FitOptions& options = {});

// As fit(), but from a caller-supplied starting state. The data must already
// be in the form the rule consumes (ties split for half-win fits).
FitResult fit_from(const ComparisonData& data, const UpdateRule& rule, Strengths start,
                   const StopRule& stop, const FitOptions& options = {});

}  // namespace pairrank
