#include "vcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vcut {

WeightedGraph::WeightedGraph(int n_) : n(n_), w(n_, 0), adj(n_) {}

WeightedGraph WeightedGraph::from_edges(int n, std::vector<i64> w,
                                        const std::vector<std::pair<int, int>>& edges, i64 W) {
    if (int(w.size()) != n) throw InvariantError("weight vector size mismatch");
    WeightedGraph g(n);
    g.W = W;
    for (int v = 0; v < n; ++v) {
        if (w[v] < 0) throw InvariantError("negative weight");
        if (W > 0 && w[v] > W) throw InvariantError("weight exceeds declared bound");
    }
    g.w = std::move(w);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n) throw InvariantError("edge endpoint out of range");
        if (a == b) throw InvariantError("self-loop");
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
        g.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    for (auto& l : g.adj) {
        std::sort(l.begin(), l.end());
        if (std::adjacent_find(l.begin(), l.end()) != l.end())
            throw InvariantError("duplicate edge");
    }
    return g;
}

bool WeightedGraph::has_edge(int u, int v) const {
    const auto& l = adj[u];
    return std::binary_search(l.begin(), l.end(), v);
}

i64 WeightedGraph::max_weight() const {
    i64 m = 0;
    for (i64 x : w) m = std::max(m, x);
    return m;
}

i64 WeightedGraph::weight_bound() const { return W > 0 ? W : max_weight(); }

i64 WeightedGraph::weight_of(const std::vector<int>& vs) const {
    i64 s = 0;
    for (int v : vs) s += w[v];
    return s;
}

bool WeightedGraph::is_complete() const { return 2 * i64(m()) == i64(n) * (n - 1); }

std::vector<int> WeightedGraph::closed_neighborhood(int v) const {
    std::vector<int> r = adj[v];
    r.insert(std::lower_bound(r.begin(), r.end(), v), v);
    return r;
}

static i64 parse_int(const std::string& tok, int line) {
    try {
        size_t pos = 0;
        long long x = std::stoll(tok, &pos);
        if (pos != tok.size()) throw ParseError("");
        return x;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": bad integer '" + tok + "'");
    }
}

WeightedGraph parse_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool header = false;
    int n = 0;
    i64 m = 0, W = 0;
    std::vector<i64> w;
    std::vector<char> seen_w;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty() || tok[0] == "c") continue;
        auto where = "line " + std::to_string(lineno) + ": ";
        if (tok[0] == "p") {
            if (header) throw ParseError(where + "duplicate header");
            if ((tok.size() != 4 && tok.size() != 5) || tok[1] != "vcut")
                throw ParseError(where + "expected 'p vcut <n> <m> [W]'");
            i64 nn = parse_int(tok[2], lineno);
            m = parse_int(tok[3], lineno);
            if (nn < 0 || nn > 10000000 || m < 0) throw ParseError(where + "bad header counts");
            n = int(nn);
            if (tok.size() == 5) {
                W = parse_int(tok[4], lineno);
                if (W < 0) throw ParseError(where + "negative weight bound");
            }
            w.assign(n, 0);
            seen_w.assign(n, 0);
            header = true;
        } else if (tok[0] == "w") {
            if (!header) throw ParseError(where + "weight before header");
            if (tok.size() != 3) throw ParseError(where + "expected 'w <id> <weight>'");
            i64 id = parse_int(tok[1], lineno), x = parse_int(tok[2], lineno);
            if (id < 1 || id > n) throw ParseError(where + "vertex id out of range");
            if (x < 0) throw ParseError(where + "negative weight");
            if (W > 0 && x > W) throw InvariantError(where + "weight exceeds declared W");
            if (seen_w[id - 1]) throw InvariantError(where + "duplicate weight line");
            seen_w[id - 1] = 1;
            w[id - 1] = x;
        } else if (tok[0] == "e") {
            if (!header) throw ParseError(where + "edge before header");
            if (tok.size() != 3) throw ParseError(where + "expected 'e <u> <v>'");
            i64 a = parse_int(tok[1], lineno), b = parse_int(tok[2], lineno);
            if (a < 1 || a > n || b < 1 || b > n) throw ParseError(where + "vertex id out of range");
            if (a == b) throw ParseError(where + "self-loop");
            edges.emplace_back(int(a - 1), int(b - 1));
        } else {
            throw ParseError(where + "unknown line type '" + tok[0] + "'");
        }
    }
    if (!header) throw ParseError("missing header");
    if (i64(edges.size()) != m)
        throw ParseError("edge count " + std::to_string(edges.size()) + " does not match header " +
                         std::to_string(m));
    return WeightedGraph::from_edges(n, std::move(w), edges, W);
}

WeightedGraph parse_graph_string(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

WeightedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << "p vcut " << g.n << " " << g.m();
    if (g.W > 0) out << " " << g.W;
    out << "\n";
    for (int v = 0; v < g.n; ++v)
        if (g.w[v] != 0) out << "w " << v + 1 << " " << g.w[v] << "\n";
    for (auto [a, b] : g.edges) out << "e " << a + 1 << " " << b + 1 << "\n";
}

WeightedGraph make_weights_positive(const WeightedGraph& g) {
    std::vector<i64> w(g.n);
    Cap n2 = mul_checked(g.n, g.n);
    const Cap lim = Cap(1) << 62;
    for (int v = 0; v < g.n; ++v) {
        Cap x = add_checked(mul_checked(n2, g.w[v]), 1);
        if (x > lim) throw OverflowError("transformed weight exceeds 62 bits");
        w[v] = i64(x);
    }
    i64 W = 0;
    if (g.W > 0) {
        Cap x = add_checked(mul_checked(n2, g.W), 1);
        if (x > lim) throw OverflowError("transformed weight bound exceeds 62 bits");
        W = i64(x);
    }
    return WeightedGraph::from_edges(g.n, std::move(w), g.edges, W);
}

i64 pow2_above(i64 x) {
    if (x >= (i64(1) << 62)) throw OverflowError("power of two above 2^62");
    i64 p = 1;
    while (p <= x) p <<= 1;
    return p;
}

i64 pow2_at_least(double x) {
    if (x > double(i64(1) << 62)) throw OverflowError("power of two above 2^62");
    i64 p = 1;
    while (double(p) < x) p <<= 1;
    return p;
}

double ParamBlock::M_real(int i) const { return std::ldexp(1.0, z - i - unit_shift); }

double ParamBlock::to_real(Cap u) const { return std::ldexp(double(u), -unit_shift); }

ParamBlock build_params(const WeightedGraph& g, double epsilon) {
    ParamBlock p;
    int n = std::max(g.n, 1);
    p.n = g.n;
    p.epsilon = epsilon;
    p.W_prime_max = pow2_above(g.max_weight());
    p.log_Wp = floor_log2(p.W_prime_max);
    p.W_max = pow2_at_least(2.0 * n * double(p.W_prime_max));
    p.log_Wmax = floor_log2(p.W_max);
    p.gamma = pow2_at_least(std::pow(double(n), 7.0 / 9.0));
    p.log_gamma = floor_log2(p.gamma);
    double logn = lg(n);
    p.delta = 4 * epsilon - std::log2(4000 * logn) / logn;
    // z = ceil(log(8 W' n^2 / gamma)) = ceil_log2(n^2) + 3 + log W' - log gamma
    p.z = ceil_log2(Cap(n) * n) + 3 + p.log_Wp - p.log_gamma;
    p.unit_shift = p.z + p.log_gamma - p.log_Wp;
    double lw = lg(double(p.W_max));
    p.N = i64(std::ceil(32.0 * std::pow(double(n), 1 + 2 * epsilon) * lw * lw / double(p.gamma)));
    p.z_prime = (32 * i64(n) + p.gamma - 1) / p.gamma;
    p.tau_star = double(n) / std::sqrt(double(p.gamma));
    p.j_dfs_star = std::max(0, int(std::ceil(std::log2(p.tau_star) - 1e-12)));
    return p;
}

// ---------------------------------------------------------------- buckets

const std::vector<int> BucketLists::empty_;

void BucketLists::resize(int nv) {
    out_.resize(nv);
    in_.resize(nv);
}

static void list_push(std::vector<std::vector<int>>& lists, int b, int item, int& pos) {
    if (int(lists.size()) <= b) lists.resize(b + 1);
    pos = int(lists[b].size());
    lists[b].push_back(item);
}

void BucketLists::insert(int item, int from, int to, Cap key) {
    if (int(info_.size()) <= item) info_.resize(item + 1);
    Info& in = info_[item];
    if (in.bucket >= 0) throw InvariantError("bucket item inserted twice");
    in.from = from;
    in.to = to;
    int b = floor_log2(key);
    if (b < 0) {
        in.bucket = -1;
        return;
    }
    in.bucket = b;
    list_push(out_[from], b, item, in.pos_out);
    list_push(in_[to], b, item, in.pos_in);
}

void BucketLists::erase(int item) {
    if (!contains(item)) return;
    Info& in = info_[item];
    auto& lo = out_[in.from][in.bucket];
    int last = lo.back();
    lo[in.pos_out] = last;
    info_[last].pos_out = in.pos_out;
    lo.pop_back();
    auto& li = in_[in.to][in.bucket];
    last = li.back();
    li[in.pos_in] = last;
    info_[last].pos_in = in.pos_in;
    li.pop_back();
    in.bucket = -1;
}

void BucketLists::update(int item, Cap key) {
    int b = floor_log2(key);
    if (item < int(info_.size()) && info_[item].bucket == b && b >= 0) return;
    int from = info_[item].from, to = info_[item].to;
    erase(item);
    if (b >= 0) insert(item, from, to, key);
}

const std::vector<int>& BucketLists::out(int v, int b) const {
    if (b < 0 || b >= int(out_[v].size())) return empty_;
    return out_[v][b];
}

const std::vector<int>& BucketLists::in(int v, int b) const {
    if (b < 0 || b >= int(in_[v].size())) return empty_;
    return in_[v][b];
}

std::vector<int> BucketLists::all_out(int v) const { return out_at_least(v, 0); }
std::vector<int> BucketLists::all_in(int v) const { return in_at_least(v, 0); }

std::vector<int> BucketLists::out_at_least(int v, int b) const {
    std::vector<int> r;
    for (int k = int(out_[v].size()) - 1; k >= std::max(b, 0); --k)
        r.insert(r.end(), out_[v][k].begin(), out_[v][k].end());
    return r;
}

std::vector<int> BucketLists::in_at_least(int v, int b) const {
    std::vector<int> r;
    for (int k = int(in_[v].size()) - 1; k >= std::max(b, 0); --k)
        r.insert(r.end(), in_[v][k].begin(), in_[v][k].end());
    return r;
}

// ------------------------------------------------------------- split graph

int SplitGraph::add_edge(int from, int to, Cap cap, EdgeKind kind) {
    int id = int(edges.size());
    edges.push_back({from, to, cap, kind});
    out_plain_[from].push_back(id);
    in_plain_[to].push_back(id);
    buckets.insert(id, from, to, cap);
    return id;
}

int SplitGraph::add_shortcut(int node, int phase, int step) {
    if (!has_sink) throw InvariantError("shortcut requires a sink");
    int e = add_edge(node, t(), W_max, EdgeKind::Regular);
    ledger.push_back({node, e, phase, step});
    return e;
}

void SplitGraph::set_cap(int e, Cap cap) {
    edges[e].cap = cap;
    buckets.update(e, cap);
}

int SplitGraph::bucket(int e) const { return floor_log2(edges[e].cap) - unit_shift; }

const std::vector<int>& SplitGraph::out_edges(int node) const { return out_plain_[node]; }
const std::vector<int>& SplitGraph::in_edges(int node) const { return in_plain_[node]; }

SplitGraph make_split_graph(const WeightedGraph& g, Cap regular_cap, int unit_shift,
                            const std::vector<int>* sink_targets) {
    SplitGraph s;
    s.n = g.n;
    s.has_sink = sink_targets != nullptr;
    s.W_max = regular_cap;
    s.unit_shift = unit_shift;
    int nn = s.num_nodes();
    s.out_plain_.assign(nn, {});
    s.in_plain_.assign(nn, {});
    s.buckets.resize(nn);
    Cap scale = pow2(unit_shift);
    for (int v = 0; v < g.n; ++v)
        s.add_edge(SplitGraph::in(v), SplitGraph::out(v), mul_checked(g.w[v], scale), EdgeKind::Special);
    for (auto [a, b] : g.edges) {
        s.add_edge(SplitGraph::out(a), SplitGraph::in(b), regular_cap, EdgeKind::Regular);
        s.add_edge(SplitGraph::out(b), SplitGraph::in(a), regular_cap, EdgeKind::Regular);
    }
    if (sink_targets)
        for (int v : *sink_targets) s.add_edge(SplitGraph::in(v), s.t(), regular_cap, EdgeKind::Regular);
    return s;
}

SplitGraph build_split_graph(const WeightedGraph& g, const ParamBlock& p,
                             const std::vector<int>* sink_targets) {
    return make_split_graph(g, p.units(p.W_max), p.unit_shift, sink_targets);
}

}  // namespace vcut
