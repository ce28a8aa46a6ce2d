#include "vcut/flow.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

namespace vcut {

int Net::add(int u, int v, Cap cap, i64 cost) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw InvariantError("arc endpoint out of range");
    if (cap < 0) throw InvariantError("negative capacity");
    arcs.push_back({u, v, cap, cost});
    return int(arcs.size()) - 1;
}

Net to_net(const SplitGraph& g) {
    Net net(g.num_nodes());
    net.arcs.reserve(g.edges.size());
    for (const auto& e : g.edges) net.arcs.push_back({e.from, e.to, e.cap, 0});
    return net;
}

namespace {

// Residual graph: arc 2a is net arc a, arc 2a+1 its reverse.
struct Res {
    int n;
    std::vector<int> to;
    std::vector<Cap> r;
    std::vector<i64> cost;
    std::vector<int> start, adj;  // CSR, per node in arc insertion order
    std::vector<int> level, it;

    explicit Res(const Net& net) : n(net.n) {
        int m = int(net.arcs.size());
        to.resize(2 * m);
        r.resize(2 * m);
        cost.resize(2 * m);
        std::vector<int> deg(n + 1, 0);
        for (int a = 0; a < m; ++a) {
            const auto& x = net.arcs[a];
            to[2 * a] = x.v;
            to[2 * a + 1] = x.u;
            r[2 * a] = x.cap;
            r[2 * a + 1] = 0;
            cost[2 * a] = x.cost;
            cost[2 * a + 1] = -x.cost;
            ++deg[x.u];
            ++deg[x.v];
        }
        start.assign(n + 1, 0);
        for (int v = 0; v < n; ++v) start[v + 1] = start[v] + deg[v];
        adj.resize(start[n]);
        std::vector<int> fill(start.begin(), start.end() - 1);
        for (int a = 0; a < m; ++a) {
            adj[fill[net.arcs[a].u]++] = 2 * a;
            adj[fill[net.arcs[a].v]++] = 2 * a + 1;
        }
    }

    int from(int ra) const { return to[ra ^ 1]; }

    // BFS over arcs passing the filter; returns whether t is reached
    template <class Ok>
    bool bfs(int s, int t, Ok ok) {
        level.assign(n, -1);
        std::vector<int> q{s};
        level[s] = 0;
        for (size_t h = 0; h < q.size(); ++h) {
            int u = q[h];
            for (int k = start[u]; k < start[u + 1]; ++k) {
                int a = adj[k];
                if (level[to[a]] < 0 && ok(a)) {
                    level[to[a]] = level[u] + 1;
                    q.push_back(to[a]);
                }
            }
        }
        return level[t] >= 0;
    }

    template <class Ok>
    Cap dfs(int u, int t, Cap push, Ok& ok) {
        if (u == t) return push;
        for (int& k = it[u]; k < start[u + 1]; ++k) {
            int a = adj[k];
            int v = to[a];
            if (level[v] != level[u] + 1 || !ok(a)) continue;
            Cap d = dfs(v, t, std::min(push, r[a]), ok);
            if (d > 0) {
                r[a] -= d;
                r[a ^ 1] += d;
                return d;
            }
        }
        return 0;
    }

    // blocking flows until the filtered graph has no s-t path; returns amount pushed
    template <class Ok>
    Cap blocking(int s, int t, Cap remaining, Ok ok) {
        Cap total = 0;
        while ((remaining < 0 || total < remaining) && bfs(s, t, ok)) {
            it.assign(start.begin(), start.end() - 1);
            while (remaining < 0 || total < remaining) {
                Cap cap = remaining < 0 ? std::numeric_limits<Cap>::max() : remaining - total;
                Cap d = dfs(s, t, cap, ok);
                if (d == 0) break;
                total += d;
            }
        }
        return total;
    }

    // largest bottleneck over residual s-t paths
    Cap widest(int s, int t) const {
        std::vector<Cap> best(n, 0);
        std::priority_queue<std::pair<Cap, int>> pq;
        best[s] = std::numeric_limits<Cap>::max();
        pq.push({best[s], s});
        while (!pq.empty()) {
            auto [b, u] = pq.top();
            pq.pop();
            if (b != best[u]) continue;
            if (u == t) return b;
            for (int k = start[u]; k < start[u + 1]; ++k) {
                int a = adj[k];
                Cap nb = std::min(b, r[a]);
                if (nb > best[to[a]]) {
                    best[to[a]] = nb;
                    pq.push({nb, to[a]});
                }
            }
        }
        return 0;
    }

    Flow extract(const Net& net, int s) const {
        Flow fl;
        int m = int(net.arcs.size());
        fl.f.resize(m);
        for (int a = 0; a < m; ++a) fl.f[a] = r[2 * a + 1];
        for (int a = 0; a < m; ++a) {
            if (net.arcs[a].u == s) fl.value += fl.f[a];
            if (net.arcs[a].v == s) fl.value -= fl.f[a];
        }
        return fl;
    }
};

// Scaling phases use thresholds 256^k, starting at the largest one not above the widest
// path bottleneck; finer steps cost more breadth-first passes than they save here.
constexpr int SCALE_RADIX = 256;

Cap scaling_start(Cap bottleneck) {
    if (bottleneck <= 0) return 0;
    Cap d = 1;
    while (d <= bottleneck / SCALE_RADIX) d *= SCALE_RADIX;
    return d;
}

}  // namespace

Flow max_flow(const Net& net, int s, int t, Cap limit) {
    if (s == t) throw InvariantError("max_flow: s == t");
    Res res(net);
    Cap total = 0;
    Cap b = res.widest(s, t);
    for (Cap delta = scaling_start(b); delta >= 1 && (limit < 0 || total < limit); delta /= SCALE_RADIX) {
        Cap rem = limit < 0 ? NO_LIMIT : limit - total;
        total += res.blocking(s, t, rem, [&](int a) { return res.r[a] >= delta; });
    }
    return res.extract(net, s);
}

Flow min_cost_max_flow(const Net& net, int s, int t, Cap limit) {
    if (s == t) throw InvariantError("min_cost_max_flow: s == t");
    for (const auto& a : net.arcs)
        if (a.cost < 0) throw InvariantError("negative cost");
    Res res(net);
    const i64 INF = std::numeric_limits<i64>::max() / 4;
    std::vector<i64> pot(net.n, 0), dist(net.n);
    Cap total = 0;
    while (limit < 0 || total < limit) {
        dist.assign(net.n, INF);
        using Item = std::pair<i64, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        dist[s] = 0;
        pq.push({0, s});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d != dist[u]) continue;
            for (int k = res.start[u]; k < res.start[u + 1]; ++k) {
                int a = res.adj[k];
                if (res.r[a] <= 0) continue;
                int v = res.to[a];
                i64 nd = d + res.cost[a] + pot[u] - pot[v];
                if (nd < dist[v]) {
                    dist[v] = nd;
                    pq.push({nd, v});
                }
            }
        }
        if (dist[t] >= INF) break;
        for (int v = 0; v < net.n; ++v) pot[v] += std::min(dist[v], dist[t]);
        Cap rem = limit < 0 ? NO_LIMIT : limit - total;
        Cap d = res.blocking(s, t, rem, [&](int a) {
            return res.r[a] > 0 && res.cost[a] + pot[res.from(a)] - pot[res.to[a]] == 0;
        });
        if (d == 0) throw InvariantError("min-cost flow made no progress");
        total += d;
    }
    return res.extract(net, s);
}

Cap flow_cost(const Net& net, const Flow& f) {
    Cap c = 0;
    for (size_t a = 0; a < net.arcs.size(); ++a) c = add_checked(c, mul_checked(f.f[a], net.arcs[a].cost));
    return c;
}

std::vector<char> residual_reachable(const Net& net, const Flow& f, int s) {
    std::vector<std::vector<int>> out(net.n), in(net.n);
    for (size_t a = 0; a < net.arcs.size(); ++a) {
        out[net.arcs[a].u].push_back(int(a));
        in[net.arcs[a].v].push_back(int(a));
    }
    std::vector<char> seen(net.n, 0);
    std::vector<int> q{s};
    seen[s] = 1;
    for (size_t h = 0; h < q.size(); ++h) {
        int u = q[h];
        for (int a : out[u])
            if (f.f[a] < net.arcs[a].cap && !seen[net.arcs[a].v]) seen[net.arcs[a].v] = 1, q.push_back(net.arcs[a].v);
        for (int a : in[u])
            if (f.f[a] > 0 && !seen[net.arcs[a].u]) seen[net.arcs[a].u] = 1, q.push_back(net.arcs[a].u);
    }
    return seen;
}

EdgeCut min_edge_cut(const Net& net, int s, int t) {
    if (s == t) throw InvariantError("min_edge_cut: s == t");
    Res res(net);
    Cap b = res.widest(s, t);
    for (Cap delta = scaling_start(b); delta >= 1; delta /= SCALE_RADIX)
        res.blocking(s, t, NO_LIMIT, [&](int a) { return res.r[a] >= delta; });
    EdgeCut c;
    c.value = res.extract(net, s).value;
    res.bfs(s, t, [&](int a) { return res.r[a] > 0; });
    c.side.resize(net.n);
    for (int v = 0; v < net.n; ++v) c.side[v] = res.level[v] >= 0;
    for (size_t a = 0; a < net.arcs.size(); ++a)
        if (c.side[net.arcs[a].u] && !c.side[net.arcs[a].v]) c.crossing.push_back(int(a));
    return c;
}

void cancel_cycles(const Net& net, Flow& f, int, int) {
    int n = net.n;
    std::vector<std::vector<int>> out(n);
    for (size_t a = 0; a < net.arcs.size(); ++a) out[net.arcs[a].u].push_back(int(a));
    // colour DFS over the support; each found cycle is cancelled and the search restarts
    for (;;) {
        std::vector<int> color(n, 0), via(n, -1), ptr(n, 0);
        std::vector<int> cycle;
        for (int root = 0; root < n && cycle.empty(); ++root) {
            if (color[root]) continue;
            std::vector<int> stack{root};
            color[root] = 1;
            while (!stack.empty() && cycle.empty()) {
                int u = stack.back();
                if (ptr[u] == int(out[u].size())) {
                    color[u] = 2;
                    stack.pop_back();
                    continue;
                }
                int a = out[u][ptr[u]++];
                if (f.f[a] <= 0) continue;
                int v = net.arcs[a].v;
                if (color[v] == 0) {
                    color[v] = 1;
                    via[v] = a;
                    stack.push_back(v);
                } else if (color[v] == 1) {
                    cycle.push_back(a);
                    for (int x = u; x != v; x = net.arcs[via[x]].u) cycle.push_back(via[x]);
                }
            }
        }
        if (cycle.empty()) return;
        Cap m = f.f[cycle[0]];
        for (int a : cycle) m = std::min(m, f.f[a]);
        for (int a : cycle) f.f[a] -= m;
    }
}

std::vector<FlowPath> flow_path_decomposition(const Net& net, Flow f, int s, int t) {
    cancel_cycles(net, f, s, t);
    std::vector<std::vector<int>> out(net.n);
    for (size_t a = 0; a < net.arcs.size(); ++a) out[net.arcs[a].u].push_back(int(a));
    std::vector<int> ptr(net.n, 0);
    std::vector<FlowPath> paths;
    auto next = [&](int u) {
        while (ptr[u] < int(out[u].size()) && f.f[out[u][ptr[u]]] <= 0) ++ptr[u];
        return ptr[u] < int(out[u].size()) ? out[u][ptr[u]] : -1;
    };
    for (;;) {
        int a = next(s);
        if (a < 0) break;
        FlowPath p;
        int u = s;
        while (u != t) {
            a = next(u);
            if (a < 0) throw InvariantError("flow decomposition: conservation violated");
            p.arcs.push_back(a);
            u = net.arcs[a].v;
        }
        p.amount = f.f[p.arcs[0]];
        for (int b : p.arcs) p.amount = std::min(p.amount, f.f[b]);
        for (int b : p.arcs) f.f[b] -= p.amount;
        paths.push_back(std::move(p));
    }
    return paths;
}

void check_flow(const Net& net, const Flow& f, int s, int t, Cap M) {
    if (f.f.size() != net.arcs.size()) throw InvariantError("flow size mismatch");
    std::vector<Cap> bal(net.n, 0);
    for (size_t a = 0; a < net.arcs.size(); ++a) {
        Cap x = f.f[a];
        if (x < 0 || x > net.arcs[a].cap) throw InvariantError("capacity violated on arc " + std::to_string(a));
        if (M > 1 && x % M != 0) throw InvariantError("flow not M-integral on arc " + std::to_string(a));
        bal[net.arcs[a].u] -= x;
        bal[net.arcs[a].v] += x;
    }
    for (int v = 0; v < net.n; ++v)
        if (v != s && v != t && bal[v] != 0) throw InvariantError("conservation violated at node " + std::to_string(v));
    if (-bal[s] != f.value) throw InvariantError("flow value mismatch");
}

// ----------------------------------------------------------- residual view

ResidualView::ResidualView(SplitGraph& g_, int s_, int t_) : g(g_), s(s_), t(t_) {
    buckets.resize(g.num_nodes());
    sync_new_edges();
}

int ResidualView::from(int arc) const {
    const auto& e = g.edges[edge_of(arc)];
    return is_fwd(arc) ? e.from : e.to;
}

int ResidualView::to(int arc) const {
    const auto& e = g.edges[edge_of(arc)];
    return is_fwd(arc) ? e.to : e.from;
}

Cap ResidualView::residual(int arc) const {
    int e = edge_of(arc);
    return is_fwd(arc) ? g.edges[e].cap - f[e] : f[e];
}

std::vector<int> ResidualView::out_at_least(int node, int j) const {
    return buckets.out_at_least(node, std::max(0, j + g.unit_shift));
}

std::vector<int> ResidualView::in_at_least(int node, int j) const {
    return buckets.in_at_least(node, std::max(0, j + g.unit_shift));
}

void ResidualView::sync_new_edges() {
    if (buckets.num_vertices() < g.num_nodes()) buckets.resize(g.num_nodes());
    for (int e = int(f.size()); e < int(g.edges.size()); ++e) {
        f.push_back(0);
        support_pos_.push_back(-1);
        buckets.insert(fwd(e), g.edges[e].from, g.edges[e].to, g.edges[e].cap);
        buckets.insert(bwd(e), g.edges[e].to, g.edges[e].from, 0);
    }
}

void ResidualView::touch(int e) {
    buckets.update(fwd(e), g.edges[e].cap - f[e]);
    buckets.update(bwd(e), f[e]);
    if (f[e] > 0 && support_pos_[e] < 0) {
        support_pos_[e] = int(support_.size());
        support_.push_back(e);
    } else if (f[e] == 0 && support_pos_[e] >= 0) {
        int last = support_.back();
        support_[support_pos_[e]] = last;
        support_pos_[last] = support_pos_[e];
        support_.pop_back();
        support_pos_[e] = -1;
    }
}

void ResidualView::refresh(int e) {
    if (f[e] > g.edges[e].cap) throw InvariantError("capacity reduced below flow");
    touch(e);
}

void ResidualView::augment(const std::vector<std::pair<int, Cap>>& delta) {
    std::vector<std::pair<int, Cap>> d(delta);
    std::sort(d.begin(), d.end(), [](auto& a, auto& b) { return a.first < b.first; });
    // per-arc totals must fit the residual capacities
    for (size_t i = 0; i < d.size();) {
        size_t j = i;
        Cap sum = 0;
        for (; j < d.size() && d[j].first == d[i].first; ++j) {
            if (d[j].second < 0) throw InvariantError("negative augmentation amount");
            sum = add_checked(sum, d[j].second);
        }
        if (d[i].first < 0 || d[i].first >= num_arcs()) throw InvariantError("augmentation arc out of range");
        if (sum > residual(d[i].first)) throw InvariantError("augmentation exceeds residual capacity");
        i = j;
    }
    std::vector<std::pair<int, Cap>> bal;
    Cap dv = 0;
    for (auto [a, x] : d) {
        if (x == 0) continue;
        bal.push_back({from(a), -x});
        bal.push_back({to(a), x});
        if (from(a) == s) dv += x;
        if (to(a) == s) dv -= x;
    }
    std::sort(bal.begin(), bal.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < bal.size();) {
        Cap sum = 0;
        size_t j = i;
        for (; j < bal.size() && bal[j].first == bal[i].first; ++j) sum += bal[j].second;
        int v = bal[i].first;
        if (v != s && v != t && sum != 0) throw InvariantError("augmentation is not a flow");
        i = j;
    }
    for (auto [a, x] : d) {
        int e = edge_of(a);
        f[e] += is_fwd(a) ? x : -x;
    }
    for (auto [a, x] : d) touch(edge_of(a));
    value += dv;
}

void ResidualView::assign(const std::vector<Cap>& flow) {
    if (flow.size() != f.size()) throw InvariantError("flow size mismatch");
    value = 0;
    for (size_t e = 0; e < f.size(); ++e) {
        if (flow[e] < 0 || flow[e] > g.edges[e].cap) throw InvariantError("assigned flow violates capacity");
        f[e] = flow[e];
        touch(int(e));
        if (g.edges[e].from == s) value += f[e];
        if (g.edges[e].to == s) value -= f[e];
    }
}

void ResidualView::check(Cap M) const { check_flow(to_net(g), as_flow(), s, t, M); }

}  // namespace vcut
