#include "pairrank/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <vector>

namespace pairrank {

namespace {

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

struct Row {
    std::size_t line;
    std::string a;
    std::string b;
    double count;
};

std::string where(const std::string& source, std::size_t line) {
    return source + " line " + std::to_string(line) + ": ";
}

std::vector<Row> read_rows(std::istream& in, const std::string& source,
                           const std::string& count_column) {
    std::vector<Row> rows;
    std::string line;
    std::size_t number = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++number;
        const std::string content = trim(line);
        if (content.empty() || content.front() == '#') {
            continue;
        }
        const auto fields = split_fields(content);
        if (!header_seen) {
            if (fields.size() != 3 || fields[0] != "i" || fields[1] != "j" ||
                fields[2] != count_column) {
                throw ParseError(where(source, number) + "expected header 'i,j," + count_column + "'",
                                 number);
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != 3) {
            throw ParseError(where(source, number) + "expected 3 fields, found " +
                                 std::to_string(fields.size()),
                             number);
        }
        if (fields[0].empty() || fields[1].empty()) {
            throw ParseError(where(source, number) + "empty player id", number);
        }
        if (fields[0] == fields[1]) {
            throw SelfMatch(where(source, number) + "player '" + fields[0] + "' is matched against itself");
        }
        char* end = nullptr;
        const double count = std::strtod(fields[2].c_str(), &end);
        if (fields[2].empty() || end != fields[2].c_str() + fields[2].size() || !std::isfinite(count)) {
            throw ParseError(where(source, number) + "'" + fields[2] + "' is not a finite number",
                             number);
        }
        if (count < 0.0) {
            throw NegativeCount(where(source, number) + "negative count " + fields[2]);
        }
        rows.push_back({number, fields[0], fields[1], count});
    }
    if (!header_seen) {
        throw ParseError(source + ": missing header 'i,j," + count_column + "'", number);
    }
    return rows;
}

}  // namespace

ComparisonData parse_matches(std::istream& matches, std::istream* ties) {
    ComparisonDataBuilder builder;
    for (const Row& row : read_rows(matches, "matches", "wins")) {
        builder.add_wins(row.a, row.b, row.count);
    }
    if (ties) {
        std::set<std::pair<std::string, std::string>> seen;
        for (const Row& row : read_rows(*ties, "ties", "ties")) {
            if (!(row.a < row.b)) {
                throw ParseError(where("ties", row.line) +
                                     "pairs must be written with the ids in ascending order",
                                 row.line);
            }
            if (!seen.emplace(row.a, row.b).second) {
                throw ParseError(where("ties", row.line) + "duplicate pair (" + row.a + ", " +
                                     row.b + ")",
                                 row.line);
            }
            builder.add_ties(row.a, row.b, row.count);
        }
    }
    return builder.build();
}

ComparisonData parse_matches(const std::filesystem::path& matches,
                             const std::optional<std::filesystem::path>& ties) {
    std::ifstream match_stream(matches);
    if (!match_stream) {
        throw Error("cannot open matches file '" + matches.string() + "'");
    }
    if (!ties) {
        return parse_matches(match_stream, nullptr);
    }
    std::ifstream tie_stream(*ties);
    if (!tie_stream) {
        throw Error("cannot open ties file '" + ties->string() + "'");
    }
    return parse_matches(match_stream, &tie_stream);
}

std::string format_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_matches(std::ostream& out, const ComparisonData& data) {
    out << "i,j,wins\n";
    for (const auto& w : data.wins()) {
        out << data.id(w.winner) << ',' << data.id(w.loser) << ',' << format_double(w.count) << '\n';
    }
}

void write_ties(std::ostream& out, const ComparisonData& data) {
    out << "i,j,ties\n";
    for (const auto& t : data.ties()) {
        out << data.id(t.first) << ',' << data.id(t.second) << ',' << format_double(t.count)
            << '\n';
    }
}

void write_ranking(std::ostream& out, const ComparisonData& data, const Strengths& strengths) {
    std::vector<Index> order(strengths.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (strengths.pi[a] != strengths.pi[b]) {
            return strengths.pi[a] > strengths.pi[b];
        }
        return data.id(a) < data.id(b);
    });
    out << "rank,id,pi,score,p1\n";
    for (std::size_t r = 0; r < order.size(); ++r) {
        const Index i = order[r];
        out << r + 1 << ',' << data.id(i) << ',' << format_double(strengths.pi[i]) << ','
            << format_double(strengths.score(i)) << ',' << format_double(strengths.p1(i)) << '\n';
    }
}

void write_trace(std::ostream& out, const TraceTable& table) {
    out << "algorithm,sweep,objective,rms_p1\n";
    for (const auto& row : table.rows) {
        out << row.algorithm << ',' << row.sweep << ',' << format_double(row.objective) << ','
            << format_double(row.rms_p1) << '\n';
    }
}

void write_truth(std::ostream& out, const ComparisonData& data, const std::vector<double>& scores) {
    out << "id,score\n";
    for (Index i = 0; i < scores.size(); ++i) {
        out << data.id(i) << ',' << format_double(scores[i]) << '\n';
    }
}

nlohmann::ordered_json to_json(const SolverSpec& spec) {
    return {
        {"algorithm", describe(spec)},
        {"alpha", spec.alpha},
        {"mode", to_string(spec.mode)},
        {"ties", to_string(spec.ties)},
        {"init", to_string(spec.init)},
        {"seed", spec.seed},
        {"tolerance", spec.stop.tolerance},
        {"max_sweeps", spec.stop.max_sweeps},
    };
}

nlohmann::ordered_json to_json(const BenchReport& report) {
    nlohmann::ordered_json algorithms = nlohmann::ordered_json::array();
    for (const auto& a : report.algorithms) {
        nlohmann::ordered_json entry = {
            {"name", a.name},
            {"spec", to_json(a.spec)},
            {"mean_iterations", a.mean},
            {"stddev_iterations", a.stddev},
            {"speedup_vs_baseline", nullptr},
            {"counts", a.counts},
        };
        if (a.speedup) {
            entry["speedup_vs_baseline"] = *a.speedup;
        }
        algorithms.push_back(std::move(entry));
    }
    return {
        {"replicates", report.replicates},
        {"criterion_tolerance", report.criterion_tolerance},
        {"reference_tolerance", report.reference_tolerance},
        {"seed_base", report.seed_base},
        {"algorithms", std::move(algorithms)},
    };
}

nlohmann::ordered_json to_json(const RateReport& report, const ComparisonData& data) {
    nlohmann::ordered_json lambda = nlohmann::ordered_json::object();
    for (Index i = 0; i < report.lambda.size(); ++i) {
        lambda[data.id(i)] = report.lambda[i];
    }
    return {{"alpha", report.alpha}, {"lambda_max", report.lambda_max}, {"lambda", std::move(lambda)}};
}

nlohmann::ordered_json fit_summary(const ComparisonData& data, const SolverSpec& spec,
                                   const FitResult& result) {
    nlohmann::ordered_json summary = {
        {"spec", to_json(spec)},
        {"players", data.n_players()},
        {"games", data.total_games()},
        {"sweeps", result.sweeps_used},
        {"termination", to_string(result.terminated)},
        {"objective", result.objective},
        {"nu", nullptr},
        {"warnings", result.warnings},
    };
    if (result.strengths.nu) {
        summary["nu"] = *result.strengths.nu;
    }
    return summary;
}

nlohmann::ordered_json components_json(const ComparisonData& data, const Components& components) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& c : components) {
        std::vector<std::string> ids;
        for (Index i : c) ids.push_back(data.id(i));
        list.push_back({{"size", c.size()}, {"players", std::move(ids)}});
    }
    return list;
}

}  // namespace pairrank
