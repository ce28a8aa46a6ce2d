#pragma once

#include <vector>

#include "vcut/graph.hpp"

namespace vcut {

struct IsolatingResult {
    std::vector<int> terminals;  // sorted
    // per terminal (same order): minimum cut separating it from the other terminals
    std::vector<i64> value;
    // false when the terminal is adjacent to another terminal (no finite cut exists)
    std::vector<char> finite;
    // component of G minus the union of bit cuts that contains the terminal (original ids)
    std::vector<std::vector<int>> component;

    int index_of(int v) const;
};

IsolatingResult isolating_cuts(const WeightedGraph& g, std::vector<int> T);

}  // namespace vcut
