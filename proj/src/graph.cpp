#include "pairrank/graph.hpp"

#include <algorithm>
#include <limits>

namespace pairrank {

namespace {

bool has_edge(const Opponent& o) { return o.wins > 0.0 || o.ties > 0.0; }

}  // namespace

// Iterative Tarjan: an explicit call stack of (vertex, next opponent slot)
// replaces recursion so deep chains cannot overflow the native stack.
Components strongly_connected_components(const ComparisonData& data) {
    constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
    const std::size_t n = data.n_players();

    std::vector<std::size_t> order(n, unvisited);
    std::vector<std::size_t> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<Index> stack;
    std::vector<std::pair<Index, std::size_t>> calls;
    std::size_t counter = 0;
    Components components;

    for (Index root = 0; root < n; ++root) {
        if (order[root] != unvisited) {
            continue;
        }
        calls.emplace_back(root, 0);
        order[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!calls.empty()) {
            auto& [v, slot] = calls.back();
            const auto opps = data.opponents(v);
            bool descended = false;
            while (slot < opps.size()) {
                const Opponent& o = opps[slot++];
                if (!has_edge(o)) {
                    continue;
                }
                const Index w = o.index;
                if (order[w] == unvisited) {
                    order[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    calls.emplace_back(w, 0);
                    descended = true;
                    break;
                }
                if (on_stack[w]) {
                    low[v] = std::min(low[v], order[w]);
                }
            }
            if (descended) {
                continue;
            }

            const Index finished = v;
            if (low[finished] == order[finished]) {
                std::vector<Index> component;
                Index w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component.push_back(w);
                } while (w != finished);
                std::sort(component.begin(), component.end());
                components.push_back(std::move(component));
            }
            calls.pop_back();
            if (!calls.empty()) {
                const Index parent = calls.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
        }
    }

    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

bool is_strongly_connected(const ComparisonData& data) {
    return strongly_connected_components(data).size() == 1;
}

ComparisonData restrict_to_players(const ComparisonData& data, const std::vector<Index>& keep) {
    std::vector<Index> remap(data.n_players(), std::numeric_limits<Index>::max());
    std::vector<std::string> ids;
    ids.reserve(keep.size());
    for (Index k = 0; k < keep.size(); ++k) {
        remap.at(keep[k]) = k;
        ids.push_back(data.id(keep[k]));
    }
    auto kept = [&](Index i) { return remap[i] != std::numeric_limits<Index>::max(); };

    std::vector<WinCount> wins;
    for (const auto& w : data.wins()) {
        if (kept(w.winner) && kept(w.loser)) {
            wins.push_back({remap[w.winner], remap[w.loser], w.count});
        }
    }
    std::vector<TieCount> ties;
    for (const auto& t : data.ties()) {
        if (kept(t.first) && kept(t.second)) {
            ties.push_back({remap[t.first], remap[t.second], t.count});
        }
    }
    return ComparisonData(std::move(ids), std::move(wins), std::move(ties));
}

Restriction restrict_to_largest_scc(const ComparisonData& data) {
    const Components components = strongly_connected_components(data);
    // Components are ordered by smallest member, so the first maximum wins ties.
    const auto largest = std::max_element(
        components.begin(), components.end(),
        [](const auto& a, const auto& b) { return a.size() < b.size(); });

    std::vector<std::string> removed;
    std::vector<bool> keep(data.n_players(), false);
    for (Index i : *largest) keep[i] = true;
    for (Index i = 0; i < data.n_players(); ++i) {
        if (!keep[i]) removed.push_back(data.id(i));
    }
    return Restriction{restrict_to_players(data, *largest), std::move(removed)};
}

}  // namespace pairrank
