#pragma once

#include <string>
#include <vector>

#include "pairrank/core.hpp"

namespace pairrank {

// Each component lists its members in ascending index order; components are
// ordered by their smallest member.
using Components = std::vector<std::vector<Index>>;

// Strongly connected components of the interaction digraph, which has an edge
// i -> j whenever w_ij > 0 or t_ij > 0 (a tie is an edge both ways).
Components strongly_connected_components(const ComparisonData& data);

bool is_strongly_connected(const ComparisonData& data);

struct Restriction {
    ComparisonData data;
    std::vector<std::string> removed;
};

// Keeps only the largest component (ties broken by smallest member index) and
// every count between its members. `removed` lists dropped ids in index order.
Restriction restrict_to_largest_scc(const ComparisonData& data);

// Restricts to the given sorted list of player indices.
ComparisonData restrict_to_players(const ComparisonData& data, const std::vector<Index>& keep);

}  // namespace pairrank
