#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "vcut/cuts.hpp"
#include "vcut/graph.hpp"
#include "vcut/isolating.hpp"

namespace vcut {

struct CutEstimate {
    i64 c = 0;
    int x = -1, y = -1;
    bool fallback = false;  // no candidate was found; c = W_max
};

// Arbitrary non-adjacent pair (lexicographically first) with c = W_max.
CutEstimate fallback_estimate(const WeightedGraph& g);

// Memo of isolating-cut results keyed by terminal set, shared across repetitions of one run.
using IsolatingCache = std::map<std::vector<int>, IsolatingResult>;

i64 alg1_repetitions(int n, double epsilon);
i64 alg2_repetitions(int n);

CutEstimate alg1_fixed(const WeightedGraph& g, int i, i64 lambda, double epsilon, uint64_t seed,
                       IsolatingCache* cache = nullptr);
CutEstimate alg1(const WeightedGraph& g, double epsilon, uint64_t seed);

struct ProbeResult {
    i64 c = 0;
    int y = -1;
};
ProbeResult alg2_probe(const WeightedGraph& g, int x, uint64_t seed);
std::vector<int> high_degree_set(const WeightedGraph& g, double epsilon);
CutEstimate alg2(const WeightedGraph& g, double epsilon, uint64_t seed);

CutEstimate nondense_combined(const WeightedGraph& g, double epsilon, uint64_t seed);

struct TerminalSet {
    std::vector<int> T;  // sorted
    int i = 0;           // drawn scale index
    // T \ ({x} + N(x))
    std::vector<int> Tx(const WeightedGraph& g, int x) const;
};

TerminalSet select_terminals(const WeightedGraph& g, uint64_t seed, uint64_t round = 0);

// |T n L| = 1, T n R nonempty and T n S inside N(x) for the unique x in T n L; x is written on success
bool is_good_terminal_set(const WeightedGraph& g, const std::vector<int>& T, const VertexCut& cut,
                          int* x = nullptr);

}  // namespace vcut
