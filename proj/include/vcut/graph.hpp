#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vcut/common.hpp"

namespace vcut {

// Simple undirected graph with non-negative integer vertex weights.
struct WeightedGraph {
    int n = 0;
    i64 W = 0;  // declared weight bound (0 when undeclared)
    std::vector<i64> w;
    std::vector<std::vector<int>> adj;  // sorted
    std::vector<std::pair<int, int>> edges;  // u < v, insertion order

    WeightedGraph() = default;
    explicit WeightedGraph(int n_);

    static WeightedGraph from_edges(int n, std::vector<i64> w,
                                    const std::vector<std::pair<int, int>>& edges, i64 W = 0);

    int m() const { return int(edges.size()); }
    int degree(int v) const { return int(adj[v].size()); }
    bool has_edge(int u, int v) const;
    i64 max_weight() const;
    i64 weight_bound() const;  // declared W, or max weight
    i64 weight_of(const std::vector<int>& vs) const;
    bool is_complete() const;
    std::vector<int> closed_neighborhood(int v) const;
};

WeightedGraph parse_graph(std::istream& in);
WeightedGraph parse_graph_string(const std::string& text);
WeightedGraph load_graph(const std::string& path);
void write_graph(std::ostream& out, const WeightedGraph& g);

// w'(v) = n^2 w(v) + 1
WeightedGraph make_weights_positive(const WeightedGraph& g);

// Parameter block. Every capacity is stored in units of M_z = 2^-unit_shift.
struct ParamBlock {
    int n = 0;
    double epsilon = 1.0 / 45;
    i64 gamma = 1;
    int log_gamma = 0;
    double delta = 0;
    i64 W_prime_max = 1;
    int log_Wp = 0;
    i64 W_max = 1;
    int log_Wmax = 0;
    int z = 0;
    i64 N = 0;
    i64 z_prime = 0;
    double tau_star = 0;
    int j_dfs_star = 0;
    int unit_shift = 0;  // unit = M_z = 2^-unit_shift

    Cap M(int i) const { return pow2(z - i); }  // M_i in units
    double M_real(int i) const;
    Cap units(i64 real) const { return mul_checked(Cap(real), pow2(unit_shift)); }
    Cap one() const { return pow2(unit_shift); }
    double to_real(Cap u) const;
    // exponent e such that 2^e (real) corresponds to 2^(e+unit_shift) units
    Cap real_pow2(int e) const { return pow2(e + unit_shift); }
};

ParamBlock build_params(const WeightedGraph& g, double epsilon = 1.0 / 45);

// least power of two strictly greater than x
i64 pow2_above(i64 x);
// least power of two >= x
i64 pow2_at_least(double x);

// Capacity-bucketed adjacency lists: OUT_b(v), IN_b(v) hold items whose key lies in [2^b, 2^(b+1)).
class BucketLists {
public:
    explicit BucketLists(int nv = 0) { resize(nv); }
    void resize(int nv);
    int num_vertices() const { return int(out_.size()); }
    void insert(int item, int from, int to, Cap key);
    void erase(int item);
    void update(int item, Cap key);
    bool contains(int item) const { return item < int(info_.size()) && info_[item].bucket >= 0; }
    int bucket(int item) const { return info_[item].bucket; }
    int top_out(int v) const { return int(out_[v].size()) - 1; }
    int top_in(int v) const { return int(in_[v].size()) - 1; }
    const std::vector<int>& out(int v, int b) const;
    const std::vector<int>& in(int v, int b) const;
    std::vector<int> all_out(int v) const;
    std::vector<int> all_in(int v) const;
    // items leaving v with key >= 2^b
    std::vector<int> out_at_least(int v, int b) const;
    std::vector<int> in_at_least(int v, int b) const;

private:
    struct Info {
        int from = -1, to = -1, bucket = -1, pos_out = -1, pos_in = -1;
    };
    std::vector<std::vector<std::vector<int>>> out_, in_;
    std::vector<Info> info_;
    static const std::vector<int> empty_;
};

enum class EdgeKind : unsigned char { Special, Regular };

struct SEdge {
    int from, to;
    Cap cap;
    EdgeKind kind;
};

struct ShortcutEntry {
    int node;  // split-graph node joined to t
    int edge;
    int phase;
    int step;
};

// Split graph: v_in = 2v, v_out = 2v+1, sink t = 2n.
class SplitGraph {
public:
    int n = 0;
    bool has_sink = false;
    Cap W_max = 0;  // regular capacity in units
    int unit_shift = 0;
    std::vector<SEdge> edges;
    BucketLists buckets;
    std::vector<ShortcutEntry> ledger;

    static int in(int v) { return 2 * v; }
    static int out(int v) { return 2 * v + 1; }
    static int vertex_of(int node) { return node / 2; }
    static bool is_in(int node) { return node % 2 == 0; }
    int t() const { return 2 * n; }
    bool is_sink(int node) const { return has_sink && node == 2 * n; }
    int num_nodes() const { return 2 * n + (has_sink ? 1 : 0); }

    int add_edge(int from, int to, Cap cap, EdgeKind kind);
    int add_shortcut(int node, int phase, int step);
    void set_cap(int e, Cap cap);
    int special_edge(int v) const { return v; }  // special edges are created first
    // bucket index of edge e in real capacity terms: floor(log2(cap)) with cap in real units
    int bucket(int e) const;
    const std::vector<int>& out_edges(int node) const;  // plain adjacency (insertion order)
    const std::vector<int>& in_edges(int node) const;

private:
    std::vector<std::vector<int>> out_plain_, in_plain_;
    friend SplitGraph make_split_graph(const WeightedGraph&, Cap, int, const std::vector<int>*);
};

// Split graph with explicit regular capacity and unit scaling.
SplitGraph make_split_graph(const WeightedGraph& g, Cap regular_cap, int unit_shift,
                            const std::vector<int>* sink_targets);
SplitGraph build_split_graph(const WeightedGraph& g, const ParamBlock& p,
                             const std::vector<int>* sink_targets);

}  // namespace vcut
