#include "pairrank/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pairrank/bench.hpp"
#include "pairrank/graph.hpp"
#include "pairrank/io.hpp"
#include "pairrank/rates.hpp"
#include "pairrank/solvers.hpp"
#include "pairrank/synth.hpp"

namespace pairrank {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string matches;
    std::string ties_file;
    std::vector<std::string> algorithms;
    std::string mode = "mle";
    std::vector<std::string> ties;
    double tolerance = 1e-10;
    std::size_t max_sweeps = 100'000;
    std::string init;
    std::uint64_t seed = 0;
    std::size_t players = 1000;
    std::size_t games = 50'000;
    double nu = 0.5;
    std::size_t max_redraws = 1000;
    std::string redraw = "offending-games";
    std::size_t replicates = 100;
    double criterion_tolerance = 1e-6;
    double reference_tolerance = 1e-13;
    std::size_t sweeps = 50;
    std::string output;
    bool restrict = false;
    bool resample = false;
    bool rates = false;
};

// Files are staged in memory and written together at the end, each through a
// temporary file and a rename.
class OutputSet {
public:
    void add(fs::path path, std::string content) {
        files_.emplace_back(std::move(path), std::move(content));
    }

    void commit() const {
        for (const auto& [path, content] : files_) {
            if (path.has_parent_path()) {
                fs::create_directories(path.parent_path());
            }
            fs::path staging = path;
            staging += ".tmp";
            {
                std::ofstream file(staging, std::ios::binary | std::ios::trunc);
                file << content;
                if (!file) {
                    throw Error("cannot write '" + staging.string() + "'");
                }
            }
            fs::rename(staging, path);
        }
    }

private:
    std::vector<std::pair<fs::path, std::string>> files_;
};

fs::path with_suffix(const std::string& prefix, const std::string& suffix) {
    return fs::path(prefix + suffix);
}

Mode mode_of(const Options& o) {
    auto mode = parse_mode(o.mode);
    if (!mode) throw UsageError("--mode must be mle or map, got '" + o.mode + "'");
    return *mode;
}

TiesModel ties_of(const std::string& text) {
    auto ties = parse_ties_model(text);
    if (!ties) throw UsageError("--ties must be none, davidson, newman or half-win, got '" + text + "'");
    return *ties;
}

double alpha_of(const std::string& text) {
    auto alpha = parse_algorithm(text);
    if (!alpha) throw UsageError("--algorithm must be newman, zermelo or alpha=<x>=0>, got '" + text + "'");
    return *alpha;
}

Init init_of(const std::string& text) {
    auto init = parse_init(text);
    if (!init) throw UsageError("--init must be ones or logistic, got '" + text + "'");
    return *init;
}

std::vector<std::string> or_default(const std::vector<std::string>& values,
                                    std::vector<std::string> fallback) {
    return values.empty() ? fallback : values;
}

SolverSpec base_spec(const Options& o, const std::string& default_init) {
    SolverSpec spec;
    spec.mode = mode_of(o);
    spec.init = init_of(o.init.empty() ? default_init : o.init);
    spec.seed = o.seed;
    spec.stop = StopRule{o.tolerance, o.max_sweeps};
    return spec;
}

// One spec per ties value; within a non-Davidson ties value, one per algorithm.
std::vector<SolverSpec> algorithm_specs(const Options& o, const std::string& default_init) {
    std::vector<SolverSpec> specs;
    for (const auto& t : or_default(o.ties, {"none"})) {
        const TiesModel ties = ties_of(t);
        SolverSpec spec = base_spec(o, default_init);
        spec.ties = ties;
        if (spec.estimates_nu()) {
            spec.alpha = ties == TiesModel::davidson ? 1.0 : 0.0;
            specs.push_back(spec);
            continue;
        }
        for (const auto& a : or_default(o.algorithms, {"newman", "zermelo"})) {
            spec.alpha = alpha_of(a);
            specs.push_back(spec);
        }
    }
    for (const auto& s : specs) {
        try {
            s.check();
        } catch (const InvalidSpec& e) {
            throw UsageError(e.what());
        }
    }
    return specs;
}

bool wants_ties(const Options& o) {
    for (const auto& t : o.ties) {
        if (ties_of(t) != TiesModel::none) return true;
    }
    return false;
}

ComparisonData load(const Options& o) {
    std::optional<fs::path> ties;
    if (!o.ties_file.empty()) ties = fs::path(o.ties_file);
    return parse_matches(fs::path(o.matches), ties);
}

SynthSpec synth_spec(const Options& o, std::uint64_t seed) {
    SynthSpec spec;
    spec.n_players = o.players;
    spec.n_games = o.games;
    spec.ties = wants_ties(o);
    spec.nu_true = o.nu;
    spec.seed = seed;
    spec.max_redraws = o.max_redraws;
    auto policy = parse_redraw_policy(o.redraw);
    if (!policy) throw UsageError("--redraw must be offending-games or whole-set, got '" + o.redraw + "'");
    spec.redraw = *policy;
    try {
        spec.check();
    } catch (const InvalidSpec& e) {
        throw UsageError(e.what());
    }
    return spec;
}

SyntheticTournament synthesize(const SynthSpec& spec) {
    return spec.ties ? generate_tournament_ties(spec) : generate_tournament(spec);
}

ordered_json data_source(const Options& o, const ComparisonData& data) {
    if (!o.matches.empty()) {
        return {{"source", "file"},
                {"matches", o.matches},
                {"ties", o.ties_file.empty() ? ordered_json(nullptr) : ordered_json(o.ties_file)},
                {"players", data.n_players()},
                {"games", data.total_games()}};
    }
    return {{"source", "synthetic"},
            {"players", o.players},
            {"games", o.games},
            {"ties", wants_ties(o)},
            {"nu_true", wants_ties(o) ? ordered_json(o.nu) : ordered_json(nullptr)},
            {"seed", o.seed},
            {"resampled_per_replicate", o.resample}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

int cmd_fit(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.algorithms.size() > 1 || o.ties.size() > 1) {
        throw UsageError("fit takes a single --algorithm and --ties");
    }
    SolverSpec spec = base_spec(o, "ones");
    spec.alpha = alpha_of(o.algorithms.empty() ? "newman" : o.algorithms.front());
    spec.ties = ties_of(o.ties.empty() ? "none" : o.ties.front());
    try {
        spec.check();
    } catch (const InvalidSpec& e) {
        throw UsageError(e.what());
    }

    const ComparisonData data = load(o);
    const FitResult result = fit(data, spec, FitOptions{TraceLevel::none});

    ordered_json summary = fit_summary(data, spec, result);
    if (o.rates) {
        if (spec.mode != Mode::mle || spec.ties != TiesModel::none) {
            throw UsageError("--rates applies to maximum-likelihood fits without ties");
        }
        // Evaluate at a tightly converged solution; the user tolerance may stop short of stationarity.
        const Strengths at = reference_fit(data, spec);
        summary["rates"] = to_json(rate_report(data, at.pi, spec.alpha), data);
    }
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    if (result.terminated == Termination::max_sweeps) {
        err << "warning: stopped after " << result.sweeps_used
            << " sweeps without reaching the tolerance\n";
    }

    std::ostringstream ranking;
    write_ranking(ranking, data, result.strengths);
    if (o.output.empty()) {
        out << ranking.str();
        return 0;
    }
    OutputSet files;
    files.add(with_suffix(o.output, ".ranking.csv"), ranking.str());
    files.add(with_suffix(o.output, ".summary.json"), dump(summary));
    files.commit();
    return 0;
}

int cmd_synth(const Options& o, std::ostream&, std::ostream&) {
    if (o.output.empty()) {
        throw UsageError("synth needs --output PREFIX");
    }
    const SynthSpec spec = synth_spec(o, o.seed);
    const SyntheticTournament t = synthesize(spec);

    OutputSet files;
    std::ostringstream matches;
    write_matches(matches, t.data);
    files.add(with_suffix(o.output, ".matches.csv"), matches.str());
    if (spec.ties) {
        std::ostringstream ties;
        write_ties(ties, t.data);
        files.add(with_suffix(o.output, ".ties.csv"), ties.str());
    }
    std::ostringstream truth;
    write_truth(truth, t.data, t.true_scores);
    files.add(with_suffix(o.output, ".truth.csv"), truth.str());
    const ordered_json meta = {
        {"players", spec.n_players},
        {"games", spec.n_games},
        {"seed", spec.seed},
        {"ties", spec.ties},
        {"nu_true", t.true_nu ? ordered_json(*t.true_nu) : ordered_json(nullptr)},
        {"redraw_policy", to_string(spec.redraw)},
        {"redraws", t.redraws},
    };
    files.add(with_suffix(o.output, ".synth.json"), dump(meta));
    files.commit();
    return 0;
}

int cmd_scc(const Options& o, std::ostream& out, std::ostream&) {
    if (o.restrict && o.output.empty()) {
        throw UsageError("scc --restrict needs --output PREFIX");
    }
    const ComparisonData data = load(o);
    const Components components = strongly_connected_components(data);
    std::size_t largest = 0;
    for (const auto& c : components) largest = std::max(largest, c.size());

    ordered_json report = {
        {"players", data.n_players()},
        {"component_count", components.size()},
        {"strongly_connected", components.size() == 1},
        {"largest_component", largest},
        {"tie_edges", "counted in both directions"},
        {"components", components_json(data, components)},
    };
    OutputSet files;
    if (o.restrict) {
        const Restriction kept = restrict_to_largest_scc(data);
        report["removed"] = kept.removed;
        std::ostringstream matches;
        write_matches(matches, kept.data);
        files.add(with_suffix(o.output, ".matches.csv"), matches.str());
        if (kept.data.has_ties()) {
            std::ostringstream ties;
            write_ties(ties, kept.data);
            files.add(with_suffix(o.output, ".ties.csv"), ties.str());
        }
    }
    if (o.output.empty()) {
        out << dump(report);
        return 0;
    }
    files.add(with_suffix(o.output, ".scc.json"), dump(report));
    files.commit();
    return 0;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream&) {
    BenchSpec spec;
    spec.algorithms = algorithm_specs(o, "logistic");
    spec.criterion_tolerance = o.criterion_tolerance;
    spec.reference_tolerance = o.reference_tolerance;
    spec.replicates = o.replicates;
    spec.seed_base = o.seed;
    spec.max_sweeps = o.max_sweeps;
    try {
        spec.check();
    } catch (const InvalidSpec& e) {
        throw UsageError(e.what());
    }
    if (o.resample && !o.matches.empty()) {
        throw UsageError("--resample applies to synthetic data only");
    }

    BenchReport report;
    ordered_json source;
    if (!o.resample) {
        const ComparisonData data =
            o.matches.empty() ? synthesize(synth_spec(o, o.seed)).data : load(o);
        report = run_bench(data, spec);
        source = data_source(o, data);
    } else {
        // A fresh tournament per replicate, one initialization each.
        std::vector<std::vector<std::size_t>> counts(spec.algorithms.size());
        BenchSpec single = spec;
        single.replicates = 1;
        for (std::size_t r = 0; r < spec.replicates; ++r) {
            const ComparisonData data = synthesize(synth_spec(o, o.seed + r)).data;
            single.seed_base = o.seed + r;
            const BenchReport one = run_bench(data, single);
            for (std::size_t a = 0; a < counts.size(); ++a) {
                counts[a].push_back(one.algorithms[a].counts.front());
            }
        }
        report = summarize(spec.algorithms, counts);
        report.criterion_tolerance = spec.criterion_tolerance;
        report.reference_tolerance = spec.reference_tolerance;
        report.seed_base = spec.seed_base;
        source = data_source(o, synthesize(synth_spec(o, o.seed)).data);
    }

    ordered_json json = {{"data", source}, {"report", to_json(report)}};
    if (o.output.empty()) {
        out << dump(json);
        return 0;
    }
    OutputSet files;
    files.add(with_suffix(o.output, ".bench.json"), dump(json));
    files.commit();
    return 0;
}

int cmd_trace(const Options& o, std::ostream& out, std::ostream&) {
    const std::vector<SolverSpec> specs = algorithm_specs(o, "logistic");
    const ComparisonData data = o.matches.empty() ? synthesize(synth_spec(o, o.seed)).data : load(o);
    const TraceTable table = trace_run(data, specs, o.sweeps);
    std::ostringstream csv;
    write_trace(csv, table);
    if (o.output.empty()) {
        out << csv.str();
        return 0;
    }
    OutputSet files;
    files.add(with_suffix(o.output, ".trace.csv"), csv.str());
    files.commit();
    return 0;
}

void add_solver_options(CLI::App* cmd, Options& o, bool many) {
    if (many) {
        cmd->add_option("--algorithm", o.algorithms,
                        "newman, zermelo or alpha=<x>; repeat to compare (default newman, zermelo)");
        cmd->add_option("--ties", o.ties,
                        "none, davidson, newman or half-win; repeat to compare");
    } else {
        cmd->add_option("--algorithm", o.algorithms, "newman, zermelo or alpha=<x> (default newman)");
        cmd->add_option("--ties", o.ties, "none, davidson, newman or half-win (default none)");
    }
    cmd->add_option("--mode", o.mode, "mle or map")->capture_default_str();
    cmd->add_option("--max-sweeps", o.max_sweeps, "sweep budget")->capture_default_str();
    cmd->add_option("--init", o.init, "ones or logistic");
    cmd->add_option("--seed", o.seed, "random seed (default $PAIRRANK_SEED or 0)")
        ->envname("PAIRRANK_SEED");
}

void add_synthetic_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--players", o.players, "synthetic players")->capture_default_str();
    cmd->add_option("--games", o.games, "synthetic games")->capture_default_str();
    cmd->add_option("--nu", o.nu, "true tie parameter for synthetic ties")->capture_default_str();
    cmd->add_option("--max-redraws", o.max_redraws, "redraws allowed to reach strong connectivity")
        ->capture_default_str();
    cmd->add_option("--redraw", o.redraw, "offending-games or whole-set")->capture_default_str();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Bradley-Terry rankings from pairwise comparisons", "pairrank"};
    app.require_subcommand(1);

    auto* fit_cmd = app.add_subcommand("fit", "fit strengths and write a ranking");
    fit_cmd->add_option("matches", o.matches, "matches CSV (i,j,wins)")->required();
    fit_cmd->add_option("--ties-file", o.ties_file, "ties CSV (i,j,ties)");
    add_solver_options(fit_cmd, o, false);
    fit_cmd->add_option("--tol", o.tolerance, "stop when max |delta p1| < tol")->capture_default_str();
    fit_cmd->add_flag("--rates", o.rates, "report convergence factors at the solution");
    fit_cmd->add_option("--output", o.output, "write PREFIX.ranking.csv and PREFIX.summary.json");

    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic tournament");
    add_synthetic_options(synth_cmd, o);
    synth_cmd->add_option("--ties", o.ties, "any value other than none generates ties");
    synth_cmd->add_option("--seed", o.seed, "random seed")->envname("PAIRRANK_SEED");
    synth_cmd->add_option("--output", o.output, "output prefix")->required();

    auto* scc_cmd = app.add_subcommand("scc", "strongly connected components (ties count both ways)");
    scc_cmd->add_option("matches", o.matches, "matches CSV")->required();
    scc_cmd->add_option("--ties-file", o.ties_file, "ties CSV");
    scc_cmd->add_flag("--restrict", o.restrict, "write the largest component");
    scc_cmd->add_option("--output", o.output, "output prefix");

    auto* bench_cmd = app.add_subcommand("bench", "sweeps to convergence, averaged over replicates");
    bench_cmd->add_option("matches", o.matches, "matches CSV; synthetic data when omitted");
    bench_cmd->add_option("--ties-file", o.ties_file, "ties CSV");
    add_solver_options(bench_cmd, o, true);
    add_synthetic_options(bench_cmd, o);
    bench_cmd->add_option("--replicates", o.replicates, "replicates")->capture_default_str();
    bench_cmd->add_option("--criterion-tol", o.criterion_tolerance, "p1 convergence criterion")
        ->capture_default_str();
    bench_cmd->add_option("--reference-tol", o.reference_tolerance, "reference fit tolerance")
        ->capture_default_str();
    bench_cmd->add_flag("--resample", o.resample, "new synthetic data for every replicate");
    bench_cmd->add_option("--output", o.output, "write PREFIX.bench.json");

    auto* trace_cmd = app.add_subcommand("trace", "per-sweep objective and RMS p1 deviation");
    trace_cmd->add_option("matches", o.matches, "matches CSV; synthetic data when omitted");
    trace_cmd->add_option("--ties-file", o.ties_file, "ties CSV");
    add_solver_options(trace_cmd, o, true);
    add_synthetic_options(trace_cmd, o);
    trace_cmd->add_option("--sweeps", o.sweeps, "sweeps to record")->capture_default_str();
    trace_cmd->add_option("--output", o.output, "write PREFIX.trace.csv");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fit_cmd->parsed()) return cmd_fit(o, out, err);
        if (synth_cmd->parsed()) return cmd_synth(o, out, err);
        if (scc_cmd->parsed()) return cmd_scc(o, out, err);
        if (bench_cmd->parsed()) return cmd_bench(o, out, err);
        if (trace_cmd->parsed()) return cmd_trace(o, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const NotStronglyConnected& e) {
        err << "error: NotStronglyConnected: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace pairrank
