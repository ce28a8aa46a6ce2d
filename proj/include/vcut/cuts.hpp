#pragma once

#include <optional>
#include <vector>

#include "vcut/graph.hpp"

namespace vcut {

// Global vertex cut (L, S, R); value = w(S).
struct VertexCut {
    std::vector<int> L, S, R;  // sorted
    i64 value = 0;
};

// s-t style vertex cut: X holds the sources, Z the sinks, Y separates them.
struct StCut {
    std::vector<int> X, Y, Z;  // sorted
    i64 value = 0;
};

bool is_valid_cut(const WeightedGraph& g, const VertexCut& c);
// swaps L and R so that w(L) <= w(R)
VertexCut canonical(const WeightedGraph& g, VertexCut c);
VertexCut to_vertex_cut(const WeightedGraph& g, const StCut& c);

// Turns a minimum edge cut of a split graph (source-side node flags) into a vertex cut.
// s is the source vertex whose out-copy was the flow source.
StCut recover_vertex_cut(const WeightedGraph& g, const SplitGraph& split,
                         std::vector<char> side, int s);

// Minimum vertex cut separating S_set from T_set; nullopt when the sets meet or touch.
std::optional<StCut> min_st_vertex_cut(const WeightedGraph& g, const std::vector<int>& S_set,
                                       const std::vector<int>& T_set);

struct BruteResult {
    bool complete = false;
    VertexCut cut;
};

// Exact global minimum over all non-adjacent pairs. Ties: lexicographically smallest S.
BruteResult brute_force_global_min_cut(const WeightedGraph& g, int limit = 24);

}  // namespace vcut
