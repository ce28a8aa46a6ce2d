#include "vcut/isolating.hpp"

#include <algorithm>

#include "vcut/cuts.hpp"

namespace vcut {

int IsolatingResult::index_of(int v) const {
    auto it = std::lower_bound(terminals.begin(), terminals.end(), v);
    if (it == terminals.end() || *it != v) return -1;
    return int(it - terminals.begin());
}

IsolatingResult isolating_cuts(const WeightedGraph& g, std::vector<int> T) {
    std::sort(T.begin(), T.end());
    T.erase(std::unique(T.begin(), T.end()), T.end());
    if (T.size() < 2) throw InvariantError("isolating cuts need at least two terminals");

    // subdivide every edge with a heavy vertex so that T becomes independent
    i64 W = std::max<i64>(g.weight_bound(), 1);
    i64 heavy = i64(mul_checked(mul_checked(2, g.n), W));
    int ns = g.n + g.m();
    std::vector<i64> ws(g.w);
    ws.resize(ns, heavy);
    std::vector<std::pair<int, int>> es;
    es.reserve(2 * g.m());
    for (int k = 0; k < g.m(); ++k) {
        es.emplace_back(g.edges[k].first, g.n + k);
        es.emplace_back(g.n + k, g.edges[k].second);
    }
    WeightedGraph gs = WeightedGraph::from_edges(ns, std::move(ws), es);

    int k = int(T.size());
    int r = std::max(1, ceil_log2(k));
    std::vector<char> removed(ns, 0);
    for (int bit = 0; bit < r; ++bit) {
        std::vector<int> A, B;
        for (int l = 0; l < k; ++l) ((l >> bit) & 1 ? B : A).push_back(T[l]);
        auto c = min_st_vertex_cut(gs, A, B);
        if (!c) throw InvariantError("bit cut undefined after subdivision");
        for (int v : c->Y) removed[v] = 1;
    }

    IsolatingResult res;
    res.terminals = T;
    res.value.resize(k);
    res.finite.resize(k);
    res.component.resize(k);
    std::vector<int> owner(ns, -1), mark(ns, -1), where(ns, -1);
    for (int l = 0; l < k; ++l) {
        // U_v: component of v after deleting every bit cut
        std::vector<int> U{T[l]};
        owner[T[l]] = l;
        for (size_t h = 0; h < U.size(); ++h)
            for (int x : gs.adj[U[h]]) {
                if (removed[x] || owner[x] >= 0) continue;
                owner[x] = l;
                U.push_back(x);
            }
        std::vector<int> N;
        for (int u : U)
            for (int x : gs.adj[u])
                if (owner[x] != l && mark[x] != l) {
                    mark[x] = l;
                    N.push_back(x);
                }
        for (int u : U)
            if (u != T[l] && std::binary_search(T.begin(), T.end(), u))
                throw InvariantError("isolating component holds two terminals");

        // local graph on U_v + N(U_v) without edges inside N(U_v), plus a sink
        std::vector<int> local(U);
        local.insert(local.end(), N.begin(), N.end());
        std::vector<std::pair<int, int>> le;
        std::vector<i64> lw;
        for (size_t a = 0; a < local.size(); ++a) lw.push_back(gs.w[local[a]]);
        int sink = int(local.size());
        lw.push_back(heavy);
        for (size_t a = 0; a < local.size(); ++a) where[local[a]] = int(a);
        for (int u : U)
            for (int x : gs.adj[u])
                if (owner[x] != l || u < x) le.emplace_back(where[u], where[x]);
        for (int x : N) le.emplace_back(where[x], sink);
        WeightedGraph gv = WeightedGraph::from_edges(sink + 1, std::move(lw), le);
        auto c = min_st_vertex_cut(gv, {0}, {sink});
        if (!c) throw InvariantError("terminal adjacent to local sink");
        res.value[l] = c->value;
        res.finite[l] = c->value < heavy;
        for (int u : U)
            if (u < g.n) res.component[l].push_back(u);
        std::sort(res.component[l].begin(), res.component[l].end());
    }
    return res;
}

}  // namespace vcut
