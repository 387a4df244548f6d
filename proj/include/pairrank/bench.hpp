#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pairrank/core.hpp"

namespace pairrank {

// Two-phase convergence measurement: converge once to high precision with
// the fast rule of the mode, then count the sweeps each algorithm needs from
// a logistic start until every p1 is within the criterion of that reference.
struct BenchSpec {
    std::vector<SolverSpec> algorithms;
    double criterion_tolerance = 1e-6;
    std::size_t replicates = 100;
    std::uint64_t seed_base = 0;
    double reference_tolerance = 1e-13;
    // Sweep budget for every run, including the reference.
    std::size_t max_sweeps = 100'000;

    void check() const;
};

struct AlgorithmStats {
    std::string name;
    SolverSpec spec;
    std::vector<std::size_t> counts;
    double mean = 0.0;
    double stddev = 0.0;
    // Mean sweeps of the baseline (Zermelo's rule, or Davidson's with ties)
    // divided by this algorithm's mean; absent without a baseline.
    std::optional<double> speedup;
};

struct BenchReport {
    std::vector<AlgorithmStats> algorithms;
    std::size_t replicates = 0;
    double criterion_tolerance = 0.0;
    double reference_tolerance = 0.0;
    std::uint64_t seed_base = 0;
};

// High-precision fixed point of the spec's mode, found with its alpha = 0
// rule (newman-ties for the Davidson model) from all-ones. Throws
// MaxSweepsExceeded.
Strengths reference_fit(const ComparisonData& data, const SolverSpec& spec,
                        double tolerance = 1e-13, std::size_t max_sweeps = 100'000);

// Full sweeps until |p1_i - p1_hat_i| < criterion for all i (and
// |nu - nu_hat| < criterion with ties), starting from the spec's initial
// state. Throws MaxSweepsExceeded.
std::size_t iterations_to_convergence(const ComparisonData& data, const SolverSpec& spec,
                                      const Strengths& reference, double criterion = 1e-6,
                                      std::size_t max_sweeps = 100'000);

// sqrt(mean_i (p1(pi_i) - p1(ref_i))^2).
double rms_p1_deviation(std::span<const double> pi, std::span<const double> reference);

// Mean, sample standard deviation and baseline speed-ups from raw counts.
// `counts[a]` holds one entry per replicate for algorithms[a].
BenchReport summarize(const std::vector<SolverSpec>& algorithms,
                      const std::vector<std::vector<std::size_t>>& counts);

// Replicate r initializes every algorithm from one logistic draw seeded with
// seed_base + r.
BenchReport run_bench(const ComparisonData& data, const BenchSpec& spec);

struct TracePoint {
    std::string algorithm;
    std::size_t sweep = 0;
    double objective = 0.0;
    double rms_p1 = 0.0;
};

struct TraceTable {
    std::vector<TracePoint> rows;
};

// Objective and RMS p1 deviation from the reference at sweeps 0..n_sweeps for
// each spec. All specs share the initial state drawn from the first spec's
// seed and init setting.
TraceTable trace_run(const ComparisonData& data, const std::vector<SolverSpec>& specs,
                     std::size_t n_sweeps);

}  // namespace pairrank
