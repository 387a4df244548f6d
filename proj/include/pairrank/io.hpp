#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "pairrank/bench.hpp"
#include "pairrank/core.hpp"
#include "pairrank/graph.hpp"
#include "pairrank/rates.hpp"
#include "pairrank/synth.hpp"

#include <json.hpp>

namespace pairrank {

// CSV files are UTF-8, comma separated, with a header row. Blank lines and
// lines starting with '#' are skipped.
//
//   matches:  i,j,wins   one row per ordered pair, duplicate rows are summed
//   ties:     i,j,ties   one row per unordered pair with i < j
//   ranking:  rank,id,pi,score,p1
//
// Throws ParseError (with the 1-based line), SelfMatch or NegativeCount.
ComparisonData parse_matches(std::istream& matches, std::istream* ties = nullptr);
ComparisonData parse_matches(const std::filesystem::path& matches,
                             const std::optional<std::filesystem::path>& ties = std::nullopt);

// %.17g, exact for a round trip through strtod.
std::string format_double(double value);

void write_matches(std::ostream& out, const ComparisonData& data);
void write_ties(std::ostream& out, const ComparisonData& data);

// Sorted by pi descending, ties in pi broken by id.
void write_ranking(std::ostream& out, const ComparisonData& data, const Strengths& strengths);

void write_trace(std::ostream& out, const TraceTable& table);

void write_truth(std::ostream& out, const ComparisonData& data, const std::vector<double>& scores);

nlohmann::ordered_json to_json(const SolverSpec& spec);
nlohmann::ordered_json to_json(const BenchReport& report);
nlohmann::ordered_json to_json(const RateReport& report, const ComparisonData& data);
nlohmann::ordered_json fit_summary(const ComparisonData& data, const SolverSpec& spec,
                                   const FitResult& result);
nlohmann::ordered_json components_json(const ComparisonData& data, const Components& components);

}  // namespace pairrank
