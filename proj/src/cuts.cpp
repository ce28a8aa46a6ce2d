#include "vcut/cuts.hpp"

#include <algorithm>

#include "vcut/flow.hpp"

namespace vcut {

bool is_valid_cut(const WeightedGraph& g, const VertexCut& c) {
    if (c.L.empty() || c.R.empty()) return false;
    std::vector<int> part(g.n, -1);
    for (int v : c.L) part[v] = 0;
    for (int v : c.S) {
        if (part[v] >= 0) return false;
        part[v] = 1;
    }
    for (int v : c.R) {
        if (part[v] >= 0) return false;
        part[v] = 2;
    }
    for (int v = 0; v < g.n; ++v)
        if (part[v] < 0) return false;
    for (auto [a, b] : g.edges)
        if ((part[a] == 0 && part[b] == 2) || (part[a] == 2 && part[b] == 0)) return false;
    return g.weight_of(c.S) == c.value;
}

VertexCut canonical(const WeightedGraph& g, VertexCut c) {
    i64 wl = g.weight_of(c.L), wr = g.weight_of(c.R);
    if (wl > wr || (wl == wr && c.R < c.L)) std::swap(c.L, c.R);
    return c;
}

VertexCut to_vertex_cut(const WeightedGraph& g, const StCut& c) {
    return canonical(g, VertexCut{c.X, c.Y, c.Z, c.value});
}

StCut recover_vertex_cut(const WeightedGraph& g, const SplitGraph& split, std::vector<char> side, int s) {
    side[SplitGraph::in(s)] = 1;
    for (int v = 0; v < g.n; ++v)
        if (!side[SplitGraph::in(v)]) side[SplitGraph::out(v)] = 0;
    for (const auto& e : split.edges)
        if (e.kind == EdgeKind::Regular && side[e.from] && !side[e.to])
            throw InvariantError("regular edge crosses the recovered cut");
    StCut c;
    for (int v = 0; v < g.n; ++v) {
        bool a = side[SplitGraph::in(v)], b = side[SplitGraph::out(v)];
        if (a && b)
            c.X.push_back(v);
        else if (!a && !b)
            c.Z.push_back(v);
        else {
            c.Y.push_back(v);
            c.value += g.w[v];
        }
    }
    return c;
}

std::optional<StCut> min_st_vertex_cut(const WeightedGraph& g, const std::vector<int>& S_set,
                                       const std::vector<int>& T_set) {
    if (S_set.empty() || T_set.empty()) throw InvariantError("min_st_vertex_cut: empty terminal set");
    std::vector<int> role(g.n, 0);
    for (int v : S_set) role[v] = 1;
    for (int v : T_set) {
        if (role[v] == 1) return std::nullopt;
        role[v] = 2;
    }
    for (auto [a, b] : g.edges)
        if (role[a] && role[b] && role[a] != role[b]) return std::nullopt;

    // Auxiliary split graph: terminals become uncuttable, a super source feeds the in-copies of
    // S_set and a super sink drains the out-copies of T_set. The super vertices need no split.
    Cap inf = pow2_at_least(2.0 * (g.n + 2) * double(pow2_above(g.max_weight())));
    int src = 2 * g.n, snk = 2 * g.n + 1;
    Net net(2 * g.n + 2);
    net.arcs.reserve(g.n + 2 * g.m() + S_set.size() + T_set.size());
    for (int v = 0; v < g.n; ++v)
        net.arcs.push_back({SplitGraph::in(v), SplitGraph::out(v), role[v] ? inf : Cap(g.w[v]), 0});
    for (auto [a, b] : g.edges) {
        net.arcs.push_back({SplitGraph::out(a), SplitGraph::in(b), inf, 0});
        net.arcs.push_back({SplitGraph::out(b), SplitGraph::in(a), inf, 0});
    }
    for (int v : S_set) net.arcs.push_back({src, SplitGraph::in(v), inf, 0});
    for (int v : T_set) net.arcs.push_back({SplitGraph::out(v), snk, inf, 0});
    EdgeCut ec = min_edge_cut(net, src, snk);
    if (ec.value >= inf) throw InvariantError("S-T cut reached the uncuttable bound");

    std::vector<char> side = ec.side;
    for (int v = 0; v < g.n; ++v)
        if (!side[SplitGraph::in(v)]) side[SplitGraph::out(v)] = 0;
    StCut c;
    for (int v = 0; v < g.n; ++v) {
        bool a = side[SplitGraph::in(v)], b = side[SplitGraph::out(v)];
        if (a && b)
            c.X.push_back(v);
        else if (!a && !b)
            c.Z.push_back(v);
        else {
            c.Y.push_back(v);
            c.value += g.w[v];
        }
    }
    for (auto [a, b] : g.edges)
        if ((side[SplitGraph::out(a)] && !side[SplitGraph::in(b)]) ||
            (side[SplitGraph::out(b)] && !side[SplitGraph::in(a)]))
            throw InvariantError("regular edge crosses the recovered cut");
    if (c.value != i64(ec.value)) throw InvariantError("recovered cut value differs from flow value");
    return c;
}

BruteResult brute_force_global_min_cut(const WeightedGraph& g, int limit) {
    if (g.n > limit) throw SizeLimitError("brute force limited to n <= " + std::to_string(limit));
    BruteResult res;
    if (g.n <= 1 || g.is_complete()) {
        res.complete = true;
        return res;
    }
    bool found = false;
    for (int x = 0; x < g.n; ++x)
        for (int y = x + 1; y < g.n; ++y) {
            if (g.has_edge(x, y)) continue;
            auto c = min_st_vertex_cut(g, {x}, {y});
            if (!found || c->value < res.cut.value || (c->value == res.cut.value && c->Y < res.cut.S)) {
                res.cut = to_vertex_cut(g, *c);
                found = true;
            }
        }
    return res;
}

}  // namespace vcut
