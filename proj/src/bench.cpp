#include "pairrank/bench.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "pairrank/solvers.hpp"

namespace pairrank {

namespace {

ComparisonData prepare(const ComparisonData& data, const SolverSpec& spec) {
    return spec.ties == TiesModel::half_win ? split_ties_as_half_wins(data) : data;
}

// Algorithms sharing a key optimize the same objective on the same data.
std::string objective_key(const SolverSpec& spec) {
    std::string ties = spec.estimates_nu() ? "davidson-model" : to_string(spec.ties);
    return to_string(spec.mode) + "/" + ties;
}

bool is_baseline(const SolverSpec& spec) {
    if (spec.estimates_nu()) {
        return spec.ties == TiesModel::davidson;
    }
    return spec.alpha == 1.0;
}

bool within(const Strengths& state, const Strengths& reference, double criterion) {
    for (std::size_t i = 0; i < state.pi.size(); ++i) {
        if (!(std::fabs(state.p1(i) - reference.p1(i)) < criterion)) {
            return false;
        }
    }
    if (reference.nu && !(std::fabs(state.nu.value_or(0.0) - *reference.nu) < criterion)) {
        return false;
    }
    return true;
}

}  // namespace

void BenchSpec::check() const {
    if (algorithms.empty()) {
        throw InvalidSpec("bench needs at least one algorithm");
    }
    if (!(criterion_tolerance > 0.0) || !(reference_tolerance > 0.0)) {
        throw InvalidSpec("tolerances must be positive");
    }
    if (!(reference_tolerance < criterion_tolerance)) {
        throw InvalidSpec("reference tolerance must be far below the criterion tolerance");
    }
    if (replicates == 0) {
        throw InvalidSpec("bench needs at least one replicate");
    }
    for (const auto& a : algorithms) a.check();
}

Strengths reference_fit(const ComparisonData& data, const SolverSpec& spec, double tolerance,
                        std::size_t max_sweeps) {
    validate(data, spec);
    SolverSpec fast = spec;
    fast.alpha = 0.0;
    if (fast.estimates_nu()) {
        fast.ties = TiesModel::newman;
    }
    fast.init = Init::ones;
    const ComparisonData prepared = prepare(data, spec);
    FitResult result = fit_from(prepared, rule_for(fast), initial_state(prepared, fast),
                                StopRule{tolerance, max_sweeps}, FitOptions{TraceLevel::none});
    if (result.terminated != Termination::converged) {
        throw MaxSweepsExceeded("reference fit did not reach tolerance " +
                                std::to_string(tolerance) + " within " +
                                std::to_string(max_sweeps) + " sweeps");
    }
    return std::move(result.strengths);
}

std::size_t iterations_to_convergence(const ComparisonData& data, const SolverSpec& spec,
                                      const Strengths& reference, double criterion,
                                      std::size_t max_sweeps) {
    validate(data, spec);
    const ComparisonData prepared = prepare(data, spec);
    check_strengths(reference.pi, prepared.n_players());
    const UpdateRule rule = rule_for(spec);
    Strengths state = initial_state(prepared, spec);
    for (std::size_t k = 0; k <= max_sweeps; ++k) {
        if (within(state, reference, criterion)) {
            return k;
        }
        if (k < max_sweeps) {
            sweep_in_place(prepared, state, rule);
        }
    }
    throw MaxSweepsExceeded(describe(spec) + " did not converge within " +
                            std::to_string(max_sweeps) + " sweeps");
}

double rms_p1_deviation(std::span<const double> pi, std::span<const double> reference) {
    if (pi.size() != reference.size()) {
        throw InvalidStrengths("RMS deviation needs vectors of equal length");
    }
    if (pi.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        const double d = p1_of(pi[i]) - p1_of(reference[i]);
        total += d * d;
    }
    return std::sqrt(total / static_cast<double>(pi.size()));
}

BenchReport summarize(const std::vector<SolverSpec>& algorithms,
                      const std::vector<std::vector<std::size_t>>& counts) {
    BenchReport report;
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        AlgorithmStats stats;
        stats.name = describe(algorithms[a]);
        stats.spec = algorithms[a];
        stats.counts = counts.at(a);
        const double n = static_cast<double>(stats.counts.size());
        if (!stats.counts.empty()) {
            const double sum = std::accumulate(stats.counts.begin(), stats.counts.end(), 0.0);
            stats.mean = sum / n;
            double squares = 0.0;
            for (std::size_t c : stats.counts) {
                squares += (static_cast<double>(c) - stats.mean) *
                           (static_cast<double>(c) - stats.mean);
            }
            stats.stddev = stats.counts.size() > 1 ? std::sqrt(squares / (n - 1.0)) : 0.0;
        }
        report.algorithms.push_back(std::move(stats));
        report.replicates = std::max(report.replicates, counts.at(a).size());
    }
    for (auto& stats : report.algorithms) {
        for (const auto& baseline : report.algorithms) {
            if (is_baseline(baseline.spec) && objective_key(baseline.spec) == objective_key(stats.spec)) {
                if (stats.mean > 0.0) {
                    stats.speedup = baseline.mean / stats.mean;
                }
                break;
            }
        }
    }
    return report;
}

BenchReport run_bench(const ComparisonData& data, const BenchSpec& spec) {
    spec.check();
    std::map<std::string, Strengths> references;
    for (const auto& algorithm : spec.algorithms) {
        const std::string key = objective_key(algorithm);
        if (!references.contains(key)) {
            references.emplace(key, reference_fit(data, algorithm, spec.reference_tolerance,
                                                  spec.max_sweeps));
        }
    }

    std::vector<std::vector<std::size_t>> counts(spec.algorithms.size());
    for (std::size_t r = 0; r < spec.replicates; ++r) {
        for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
            SolverSpec run = spec.algorithms[a];
            run.init = Init::logistic;
            run.seed = spec.seed_base + r;
            counts[a].push_back(iterations_to_convergence(
                data, run, references.at(objective_key(run)), spec.criterion_tolerance,
                spec.max_sweeps));
        }
    }
    BenchReport report = summarize(spec.algorithms, counts);
    report.criterion_tolerance = spec.criterion_tolerance;
    report.reference_tolerance = spec.reference_tolerance;
    report.seed_base = spec.seed_base;
    return report;
}

TraceTable trace_run(const ComparisonData& data, const std::vector<SolverSpec>& specs,
                     std::size_t n_sweeps) {
    if (specs.empty()) {
        throw InvalidSpec("trace needs at least one algorithm");
    }
    TraceTable table;
    std::map<std::string, Strengths> references;
    for (const auto& original : specs) {
        SolverSpec spec = original;
        spec.init = specs.front().init;
        spec.seed = specs.front().seed;
        validate(data, spec);

        const std::string key = objective_key(spec);
        if (!references.contains(key)) {
            references.emplace(key, reference_fit(data, spec));
        }
        const Strengths& reference = references.at(key);

        const ComparisonData prepared = prepare(data, spec);
        const UpdateRule rule = rule_for(spec);
        Strengths state = initial_state(prepared, spec);
        const std::string name = describe(spec);
        for (std::size_t k = 0;; ++k) {
            table.rows.push_back({name, k, objective_value(prepared, state, rule),
                                  rms_p1_deviation(state.pi, reference.pi)});
            if (k == n_sweeps) {
                break;
            }
            sweep_in_place(prepared, state, rule);
        }
    }
    return table;
}

}  // namespace pairrank
