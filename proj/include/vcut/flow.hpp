#pragma once

#include <utility>
#include <vector>

#include "vcut/common.hpp"
#include "vcut/graph.hpp"

namespace vcut {

// Plain directed network. Arc ids are insertion indices.
struct Net {
    struct Arc {
        int u, v;
        Cap cap;
        i64 cost;
    };
    int n = 0;
    std::vector<Arc> arcs;

    Net() = default;
    explicit Net(int n_) : n(n_) {}
    int add(int u, int v, Cap cap, i64 cost = 0);
};

// Network with the same node numbering and arc order as the split graph.
Net to_net(const SplitGraph& g);

struct Flow {
    std::vector<Cap> f;  // per arc
    Cap value = 0;
};

constexpr Cap NO_LIMIT = -1;

// Exact maximum flow (Dinic with bottleneck-guided capacity scaling).
// With limit >= 0 the flow value stops at min(limit, max flow).
Flow max_flow(const Net& net, int s, int t, Cap limit = NO_LIMIT);

// Minimum cost among flows of maximum value (or of value min(limit, max)).
Flow min_cost_max_flow(const Net& net, int s, int t, Cap limit = NO_LIMIT);

Cap flow_cost(const Net& net, const Flow& f);

struct EdgeCut {
    Cap value = 0;
    std::vector<char> side;   // 1 = source side
    std::vector<int> crossing;  // arcs from source side to sink side
};

EdgeCut min_edge_cut(const Net& net, int s, int t);

// nodes reachable from s in the residual network of f
std::vector<char> residual_reachable(const Net& net, const Flow& f, int s);

struct FlowPath {
    std::vector<int> arcs;
    Cap amount;
};

// Cancels cycles first, so the decomposition covers the whole value.
std::vector<FlowPath> flow_path_decomposition(const Net& net, Flow f, int s, int t);

// Removes all circulations from f; the value is unchanged.
void cancel_cycles(const Net& net, Flow& f, int s, int t);

// Throws InvariantError on capacity, conservation, value or M-integrality violations.
void check_flow(const Net& net, const Flow& f, int s, int t, Cap M = 1);

// Residual network of a flow on a split graph. Arc 2e is the forward copy of edge e
// (residual c - f), arc 2e+1 the backward copy (residual f). Residual arcs are kept in
// capacity buckets keyed by residual amount in units.
class ResidualView {
public:
    ResidualView(SplitGraph& g, int s, int t);

    SplitGraph& g;
    int s, t;
    std::vector<Cap> f;
    Cap value = 0;
    BucketLists buckets;

    static int fwd(int e) { return 2 * e; }
    static int bwd(int e) { return 2 * e + 1; }
    static int edge_of(int arc) { return arc / 2; }
    static bool is_fwd(int arc) { return arc % 2 == 0; }

    int num_arcs() const { return 2 * int(f.size()); }
    int from(int arc) const;
    int to(int arc) const;
    Cap residual(int arc) const;
    bool present(int arc) const { return residual(arc) > 0; }
    bool special(int arc) const { return g.edges[edge_of(arc)].kind == EdgeKind::Special; }

    // residual arcs leaving / entering node with residual >= 2^j real
    std::vector<int> out_at_least(int node, int j) const;
    std::vector<int> in_at_least(int node, int j) const;

    // edges with f(e) > 0
    const std::vector<int>& support() const { return support_; }
    bool in_support(int e) const { return support_pos_[e] >= 0; }

    // picks up edges appended to g since the last call
    void sync_new_edges();
    // re-buckets edge e after a capacity change in g
    void refresh(int e);
    // adds a residual flow given as (arc, amount) pairs
    void augment(const std::vector<std::pair<int, Cap>>& delta);
    // replaces the whole flow
    void assign(const std::vector<Cap>& flow);

    Flow as_flow() const { return {f, value}; }
    void check(Cap M = 1) const;

private:
    std::vector<int> support_, support_pos_;
    void touch(int e);
};

}  // namespace vcut
