#include "vcut/subroutine.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <unordered_map>

#include "vcut/flow.hpp"
#include "vcut/sampling.hpp"

namespace vcut {

OracleHandle immediate_oracle(const WeightedGraph& g, double delta, uint64_t seed, int terminal, OracleMode mode,
                              const EstimatorConstants& k) {
    return [&g, delta, seed, terminal, mode, k](const std::vector<int>& Z, int call) {
        auto rng = substream(seed, {TAG_ORACLE, uint64_t(terminal), uint64_t(call)});
        return subgraph_oracle(g, Z, delta, rng, mode, k);
    };
}

bool size_assumptions_hold(const ParamBlock& p) {
    double logn = lg(p.n), lw = lg(double(p.W_max));
    if (p.epsilon <= 1 / std::sqrt(logn)) return false;
    return std::pow(double(p.n), p.epsilon / 10) > std::ldexp(1.0, 20) * logn * logn * lw * lw;
}

double effective_delta(const ParamBlock& p, const SubroutineConfig& cfg) {
    if (cfg.oracle_tau_override <= 0) return p.delta;
    double n = std::max(p.n, 2);
    return 1 - std::log(cfg.oracle_tau_override * 1000 * lg(n)) / std::log(n);
}

static std::vector<int> terminals_apart(const WeightedGraph& g, const std::vector<int>& T, int s) {
    std::vector<int> Ts;
    for (int v : T)
        if (v != s && !g.has_edge(s, v)) Ts.push_back(v);
    return Ts;
}

std::optional<i64> exact_opt_s(const WeightedGraph& g, const std::vector<int>& T, int s) {
    auto Ts = terminals_apart(g, T, s);
    if (Ts.empty()) return std::nullopt;
    Cap big = pow2_at_least(2.0 * std::max(g.n, 1) * double(pow2_above(g.max_weight())));
    SplitGraph G = make_split_graph(g, big, 0, &Ts);
    return i64(max_flow(to_net(G), SplitGraph::out(s), G.t()).value);
}

bool shortcut_valid(const VertexCut& cut, int node) {
    int v = SplitGraph::vertex_of(node);
    if (std::find(cut.R.begin(), cut.R.end(), v) != cut.R.end()) return true;
    return !SplitGraph::is_in(node) && std::find(cut.S.begin(), cut.S.end(), v) != cut.S.end();
}

namespace {

struct Fail {
    std::string reason;
};

// max flow with every capacity divided by M, so the result is M-integral
Flow flow_in_multiples(const Net& net, int s, int t, Cap M, Cap limit = NO_LIMIT, bool min_cost = false) {
    Net q(net.n);
    q.arcs.reserve(net.arcs.size());
    for (const auto& a : net.arcs) q.arcs.push_back({a.u, a.v, a.cap / M, a.cost});
    Cap lim = limit < 0 ? NO_LIMIT : limit / M;
    Flow f = min_cost ? min_cost_max_flow(q, s, t, lim) : max_flow(q, s, t, lim);
    for (auto& x : f.f) x *= M;
    f.value *= M;
    return f;
}

// largest multiple of M that is at least M below c (zero when c < 2M)
Cap trim(Cap c, Cap M) { return c < 2 * M ? 0 : ((c - M) / M) * M; }

struct Explored {
    enum Outcome { ReachedT, Saturated, Exhausted } outcome = Exhausted;
    int x = -1;
    std::vector<int> nodes;
    std::vector<char> in;
    std::vector<int> arcs;
};

class Run {
public:
    Run(const WeightedGraph& g_, const std::vector<int>& T_, int s_, const SubroutineConfig& cfg_,
        const OracleHandle& oracle_, uint64_t seed_, const Instrumentation* ins_, SubroutineReport& rep_)
        : g(g_), T(T_), s(s_), cfg(cfg_), oracle(oracle_), seed(seed_), ins(ins_), rep(rep_),
          p(build_params(g_, cfg_.epsilon)) {}

    void run_forced(const std::vector<int>& Ts);

private:
    const WeightedGraph& g;
    const std::vector<int>& T;
    int s;
    const SubroutineConfig& cfg;
    const OracleHandle& oracle;
    uint64_t seed;
    const Instrumentation* ins;
    SubroutineReport& rep;
    ParamBlock p;
    double delta = 0;
    SplitGraph G;
    std::unique_ptr<ResidualView> H;
    DigraphView view;
    int S = 0, t = 0;
    std::vector<char> closed_s, sink_target;
    std::unordered_map<i64, int> edge_index;
    std::vector<char> in_R, in_S, in_L;
    std::vector<char> joined;  // nodes that already have a shortcut

    // state shared by the steps of one phase
    Explored J;
    std::vector<Cap> beta;
    std::vector<char> inU, inQ, inQp;
    std::size_t nQ = 0;
    bool has_Xstar = false;
    Cap cut_capacity = 0;

    void violation(const std::string& what) { rep.violations.push_back(what); }
    double nd() const { return double(std::max(p.n, 2)); }
    double lgn() const { return lg(p.n); }
    double lgW() const { return lg(double(p.W_max)); }
    double sparse_tau() const {
        return cfg.sparse_tau_override > 0 ? cfg.sparse_tau_override : std::pow(nd(), 1 - 4 * p.epsilon);
    }

    // G'' edge of the regular arc a_out -> b_in
    int regular_edge(int a, int b) const {
        int k = edge_index.at(i64(std::min(a, b)) * p.n + std::max(a, b));
        return p.n + 2 * k + (g.edges[k].first == a ? 0 : 1);
    }

    template <class Fn>
    void for_out(int u, Fn&& fn) const {
        for (int e : G.out_edges(u))
            if (H->residual(ResidualView::fwd(e)) > 0) fn(ResidualView::fwd(e));
        for (int e : G.in_edges(u))
            if (H->residual(ResidualView::bwd(e)) > 0) fn(ResidualView::bwd(e));
    }
    template <class Fn>
    void for_in(int v, Fn&& fn) const {
        for (int e : G.in_edges(v))
            if (H->residual(ResidualView::fwd(e)) > 0) fn(ResidualView::fwd(e));
        for (int e : G.out_edges(v))
            if (H->residual(ResidualView::bwd(e)) > 0) fn(ResidualView::bwd(e));
    }

    OracleResponse ask(const std::vector<int>& Z) {
        int k = rep.oracle_calls;
        OracleResponse r = oracle(Z, k);
        ++rep.oracle_calls;
        if (oracle_errs(g, Z, r, delta)) ++rep.oracle_errors;
        return r;
    }

    void shortcut(int node, int phase, int step) {
        if (joined.size() < size_t(G.num_nodes())) joined.resize(G.num_nodes(), 0);
        if (joined[node]) return;
        joined[node] = 1;
        G.add_shortcut(node, phase, step);
        H->sync_new_edges();
    }

    void preprocess();
    void boundary(int i);
    Explored explore(int i, int iter);
    void push_through(const Explored& X, int x, int i);
    void step1(int i, PhaseRecord& rec);
    void step2(int i, PhaseRecord& rec);
    void step3(int i, PhaseRecord& rec);
    void check_crossing();
    i64 finish();
};

void Run::run_forced(const std::vector<int>& Ts) {
    delta = effective_delta(p, cfg);
    G = build_split_graph(g, p, &Ts);
    S = SplitGraph::out(s);
    t = G.t();
    H = std::make_unique<ResidualView>(G, S, t);
    closed_s.assign(g.n, 0);
    sink_target.assign(g.n, 0);
    for (int v : Ts) sink_target[v] = 1;
    closed_s[s] = 1;
    for (int u : g.adj[s]) closed_s[u] = 1;
    for (int k = 0; k < g.m(); ++k) edge_index[i64(g.edges[k].first) * p.n + g.edges[k].second] = k;
    view.n = G.num_nodes();
    view.out = [this](int u, const DigraphView::Visit& f) {
        for_out(u, [&](int a) { f(H->to(a), H->residual(a)); });
    };
    view.in = [this](int v, const DigraphView::Visit& f) {
        for_in(v, [&](int a) { f(H->from(a), H->residual(a)); });
    };
    if (ins) {
        in_L.assign(g.n, 0), in_S.assign(g.n, 0), in_R.assign(g.n, 0);
        for (int v : ins->cut.L) in_L[v] = 1;
        for (int v : ins->cut.S) in_S[v] = 1;
        for (int v : ins->cut.R) in_R[v] = 1;
        int x = -1;
        rep.good_pair = is_good_terminal_set(g, T, ins->cut, &x) && x == s;
    }

    try {
        if (!cfg.zero_start) preprocess();
        boundary(0);
        for (int i = 1; i <= p.z; ++i) {
            PhaseRecord rec;
            rec.phase = i;
            rep.phases_run = i;
            try {
                step1(i, rec);
                step2(i, rec);
                step3(i, rec);
            } catch (...) {
                rep.phases.push_back(rec);
                throw;
            }
            rec.support = H->support().size();
            rec.value = to_string(H->value);
            rep.phases.push_back(rec);
            boundary(i);
        }
        rep.c_s = finish();
    } catch (const Fail& f) {
        rep.failed = true;
        rep.fail_reason = f.reason;
        rep.fail_phase = rep.phases_run;
        rep.c_s = p.W_max;
    }
    rep.ledger = G.ledger;
    if (ins) {
        rep.audited = true;
        for (const auto& e : G.ledger)
            if (!shortcut_valid(ins->cut, e.node)) ++rep.invalid_shortcuts;
    }
}

void Run::preprocess() {
    Cap M0 = p.M(0);
    // light vertices are dropped, except that a light terminal keeps its in-copy and sink edge
    std::vector<char> heavy(g.n, 0), keep_in(g.n, 0), keep_out(g.n, 0);
    std::vector<int> Z;
    for (int v = 0; v < g.n; ++v) {
        heavy[v] = p.units(g.w[v]) >= M0;
        keep_in[v] = heavy[v] || sink_target[v];
        keep_out[v] = heavy[v] || v == s;
        if (keep_in[v] && !closed_s[v]) Z.push_back(v);
    }
    OracleResponse r = ask(Z);
    std::vector<char> yh(g.n, 0);
    for (int v : r.Yh) {
        yh[v] = 1;
        if (v != s) shortcut(SplitGraph::out(v), 0, 0);
    }

    Net net(G.num_nodes());
    std::vector<int> emap;
    std::vector<char> used(G.edges.size(), 0);
    auto put = [&](int e, Cap cap) {
        if (used[e]) return;
        used[e] = 1;
        net.add(G.edges[e].from, G.edges[e].to, cap);
        emap.push_back(e);
    };
    for (int v = 0; v < g.n; ++v)
        if (heavy[v] && v != s) put(G.special_edge(v), trim(G.edges[v].cap, M0));
    for (int u : g.adj[s])
        if (keep_in[u]) {
            int e = regular_edge(s, u);
            put(e, G.edges[e].cap);
        }
    for (int e : G.in_edges(t)) {
        int x = G.edges[e].from, v = SplitGraph::vertex_of(x);
        if (SplitGraph::is_in(x) ? keep_in[v] : keep_out[v]) put(e, G.edges[e].cap);
    }
    for (auto [z, y] : r.E) {
        if (!yh[z] && keep_out[z] && keep_in[y] && !closed_s[y]) {
            int e = regular_edge(z, y);
            put(e, G.edges[e].cap);
        }
        if (!yh[y] && keep_out[y] && keep_in[z]) {
            int e = regular_edge(y, z);
            put(e, G.edges[e].cap);
        }
    }
    Flow fl = flow_in_multiples(net, S, t, M0);
    std::vector<Cap> full(G.edges.size(), 0);
    for (size_t k = 0; k < emap.size(); ++k) full[emap[k]] = fl.f[k];
    H->assign(full);
}

void Run::boundary(int i) {
    Cap M = p.M(i);
    std::string at = "phase " + std::to_string(i) + ": ";
    try {
        H->check(M);
    } catch (const InvariantError& e) {
        violation(at + "flow not M-integral or invalid (" + e.what() + ")");
    }
    if (rep.opt_s && !cfg.zero_start) {
        Cap need = p.units(*rep.opt_s) - Cap(4) * p.n * M;
        if (H->value < need) violation(at + "flow value below OPT_s - 4nM");
    }
    for (int v = 0; v < g.n; ++v) {
        Cap c = p.units(g.w[v]);
        if (c >= M && H->f[G.special_edge(v)] > c - M) violation(at + "special flow above w(v) - M at " + std::to_string(v));
    }
    double budget = cfg.support_const * std::max(i, 1) * std::pow(nd(), 2 - 4 * p.epsilon) * std::pow(lgW(), 4);
    if (double(H->support().size()) > budget) violation(at + "support above budget");
}

Explored Run::explore(int i, int iter) {
    Cap Mg = p.M(i) * p.gamma;
    i64 N = cfg.N_override > 0 ? i64(cfg.N_override) : p.N;
    int jd = p.j_dfs_star;
    Explored X;
    X.in.assign(G.num_nodes(), 0);
    X.in[S] = 1;
    X.nodes.push_back(S);
    std::vector<int> stack{S};
    i64 found_out = 0;
    // returns true when the out-copy count reaches N
    auto add = [&](int y) {
        X.in[y] = 1;
        X.nodes.push_back(y);
        stack.push_back(y);
        if (!SplitGraph::is_in(y)) ++found_out;
        return found_out >= N;
    };
    struct Counter {
        std::vector<int> n;
        std::vector<int> arcs;
    };
    std::unordered_map<int, Counter> counters;
    int heavy_calls = 0;

    for (;;) {
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int e : G.out_edges(x))
                if (G.edges[e].to == t && H->residual(ResidualView::fwd(e)) > 0) {
                    X.outcome = Explored::ReachedT;
                    X.x = x;
                    return X;
                }
            std::vector<int> arcs;
            for_out(x, [&](int a) { arcs.push_back(a); });
            for (int a : arcs) {
                int y = H->to(a);
                if (X.in[y]) continue;
                Cap r = H->residual(a);
                if (r >= Mg) {
                    X.arcs.push_back(a);
                    if (add(y)) {
                        X.outcome = Explored::Saturated;
                        return X;
                    }
                } else if (SplitGraph::is_in(x) && y != t && !SplitGraph::is_in(y) && !H->special(a)) {
                    auto& c = counters[y];
                    if (c.n.empty()) c.n.assign(jd + 1, 0);
                    bool stored = false;
                    for (int j = 1; j <= jd; ++j) {
                        if (r < (Mg >> j)) continue;
                        if (!stored) c.arcs.push_back(a), stored = true;
                        if (++c.n[j] == (1 << j)) {
                            for (int b : c.arcs)
                                if (H->residual(b) >= (Mg >> j)) X.arcs.push_back(b);
                            counters.erase(y);
                            if (add(y)) {
                                X.outcome = Explored::Saturated;
                                return X;
                            }
                            break;
                        }
                    }
                }
            }
        }
        bool grew = false;
        for (int j = jd + 1; j <= p.log_gamma && !grew; ++j) {
            std::vector<int> Z, Zp;
            for (int u : X.nodes)
                if (SplitGraph::is_in(u)) Z.push_back(u);
            for (int v = 0; v < g.n; ++v)
                if (!X.in[SplitGraph::out(v)]) Zp.push_back(SplitGraph::out(v));
            std::sort(Z.begin(), Z.end());
            auto rng = substream(seed, {TAG_HEAVY, uint64_t(s), uint64_t(i), uint64_t(iter), uint64_t(heavy_calls++)});
            Cap cstar = Mg >> j;
            HeavyWitness w = heavy_vertex(view, Z, Zp, (i64(1) << j) + 1, cstar, double(p.W_max), rng, cfg.k);
            if (!w.found) continue;
            int y = w.v, own = SplitGraph::in(SplitGraph::vertex_of(y));
            auto it = std::find(w.sources.begin(), w.sources.end(), own);
            if (it != w.sources.end())
                w.sources.erase(it);
            else
                w.sources.pop_back();
            w.sources.resize(size_t(1) << j);
            for (int u : w.sources)
                X.arcs.push_back(ResidualView::bwd(regular_edge(SplitGraph::vertex_of(y), SplitGraph::vertex_of(u))));
            grew = true;
            if (add(y)) {
                X.outcome = Explored::Saturated;
                return X;
            }
        }
        if (!grew) break;
    }
    X.outcome = Explored::Exhausted;
    return X;
}

void Run::push_through(const Explored& X, int x, int i) {
    Cap Mp = p.M(i), amount = Mp * p.gamma / 2;
    std::vector<std::pair<int, Cap>> delta_f;
    if (x != S) {
        std::unordered_map<int, int> loc;
        for (size_t k = 0; k < X.nodes.size(); ++k) loc[X.nodes[k]] = int(k);
        Net net(int(X.nodes.size()));
        for (int a : X.arcs) {
            Cap c = H->residual(a);
            net.add(loc.at(H->from(a)), loc.at(H->to(a)), H->special(a) ? trim(c, Mp) : c);
        }
        Flow fl = flow_in_multiples(net, loc.at(S), loc.at(x), Mp, amount);
        if (fl.value < amount) {
            violation("phase " + std::to_string(i) + ": explored subgraph carries less than M'gamma/2");
            throw Fail{"local flow below M'gamma/2"};
        }
        for (size_t k = 0; k < X.arcs.size(); ++k)
            if (fl.f[k] > 0) delta_f.push_back({X.arcs[k], fl.f[k]});
    }
    int best = -1;
    for (int e : G.out_edges(x))
        if (G.edges[e].to == t) {
            int a = ResidualView::fwd(e);
            if (best < 0 || H->residual(a) > H->residual(best)) best = a;
        }
    if (best < 0 || H->residual(best) < amount) throw Fail{"no sink arc with room at the reached vertex"};
    delta_f.push_back({best, amount});
    H->augment(delta_f);
}

void Run::step1(int i, PhaseRecord& rec) {
    Cap Mg = p.M(i) * p.gamma;
    for (int iter = 0;; ++iter) {
        J = explore(i, iter);
        ++rec.step1_iterations;
        rec.J_edges = std::max(rec.J_edges, J.arcs.size());
        if (J.outcome == Explored::Exhausted) break;
        if (iter + 1 >= p.z_prime) throw Fail{"step 1 did not settle within z' iterations"};
        if (J.outcome == Explored::ReachedT) {
            ++rec.step1_reached;
            push_through(J, J.x, i);
        } else {
            ++rec.step1_saturated;
            std::vector<int> Gamma;
            for (int u : J.nodes)
                if (!SplitGraph::is_in(u) && u != S) Gamma.push_back(u);
            auto rng = substream(seed, {TAG_SHORTCUT, uint64_t(s), uint64_t(i), uint64_t(iter)});
            int v = Gamma[std::uniform_int_distribution<size_t>(0, Gamma.size() - 1)(rng)];
            shortcut(v, i, 1);
            push_through(J, v, i);
        }
    }
    double explore_budget = cfg.explore_const * nd() * double(cfg.N_override > 0 ? i64(cfg.N_override) : p.N);
    if (double(rec.J_edges) > explore_budget) violation("phase " + std::to_string(i) + ": explored subgraph above budget");

    // regular arcs leaving J towards out-copies, bucketed by capacity
    std::vector<std::unordered_map<int, int>> per_level(p.log_gamma + 1);
    for (int u : J.nodes) {
        if (!SplitGraph::is_in(u)) continue;
        for_out(u, [&](int a) {
            int y = H->to(a);
            if (y == t || J.in[y] || SplitGraph::is_in(y) || H->special(a)) return;
            Cap c = H->residual(a);
            for (int j = 1; j <= p.log_gamma; ++j)
                if (c >= (Mg >> j) && c < (Mg >> (j - 1))) ++per_level[j][y];
        });
    }
    for (int j = 1; j <= p.log_gamma; ++j) {
        double bound = std::ldexp(1.0, j + 11) * lgn() * lgW();
        for (auto [y, c] : per_level[j])
            if (double(c) > bound) throw Fail{"too many regular arcs of one capacity class into an out-copy"};
    }
}

void Run::step2(int i, PhaseRecord& rec) {
    Cap Mp = p.M(i);
    double Mreal = p.M_real(i);
    int nn = G.num_nodes();
    std::vector<int> loc(nn, -1);
    for (size_t k = 0; k < J.nodes.size(); ++k) loc[J.nodes[k]] = int(k);
    int tp = int(J.nodes.size());

    // contracted graph: J plus a super sink for everything outside J, parallel arcs merged
    Net net(tp + 1);
    std::vector<Cap> out_sum(tp, 0);
    for (int u : J.nodes)
        for_out(u, [&](int a) {
            int y = H->to(a);
            if (loc[y] >= 0)
                net.add(loc[u], loc[y], H->residual(a));
            else
                out_sum[loc[u]] += H->residual(a);
        });
    std::vector<int> bundle(tp, -1);
    for (int k = 0; k < tp; ++k)
        if (out_sum[k] > 0) bundle[k] = net.add(k, tp, out_sum[k]);
    beta.assign(g.n, 0);
    for (int v = 0; v < g.n; ++v)
        if (loc[SplitGraph::in(v)] >= 0) beta[v] = out_sum[loc[SplitGraph::in(v)]];

    inU.assign(g.n, 0), inQ.assign(g.n, 0), inQp.assign(g.n, 0);
    int j0 = Mreal >= 1 ? 0 : int(std::lround(std::log2(Mreal)));
    int jstar = int(std::ceil(std::log2(4 * std::pow(nd(), 9 * p.epsilon)) + std::log2(Mreal) - 1e-12));
    Cap big = p.real_pow2(jstar);
    for (int v = 0; v < g.n; ++v) {
        if (p.units(g.w[v]) < Mp) continue;
        inU[v] = 1;
        ++rec.U;
        if (H->residual(ResidualView::fwd(G.special_edge(v))) >= Mp * p.gamma)
            ++rec.U_h;
        else
            ++rec.U_l;
        if (loc[SplitGraph::in(v)] < 0) {
            inQp[v] = 1, ++rec.Q0p;
        } else if (beta[v] >= big) {
            inQp[v] = 1, ++rec.Q1p;
        } else if (loc[SplitGraph::out(v)] >= 0) {
            inQp[v] = 1, ++rec.Q2p;
        } else {
            inQ[v] = 1;
        }
    }

    double batch_scale = std::pow(nd(), 5.5 * p.epsilon) * double(p.gamma) * Mreal;
    double type1_budget = 256 * std::pow(nd(), 1 - 5.5 * p.epsilon) * lgn() * lgW() / double(p.gamma);
    int type1 = 0;
    Flow fq;
    for (;;) {
        for (int v = 0; v < g.n; ++v)
            if (loc[SplitGraph::in(v)] >= 0 && bundle[loc[SplitGraph::in(v)]] >= 0)
                net.arcs[bundle[loc[SplitGraph::in(v)]]].cost = inQ[v] ? 1 : 0;
        fq = flow_in_multiples(net, loc[S], tp, Mp, NO_LIMIT, true);
        ++rec.step2_iterations;
        bool moved = false;
        for (int j = j0; j < jstar; ++j) {
            Cap lo = p.real_pow2(j), hi = p.real_pow2(j + 1);
            std::vector<int> batch;
            for (int v = 0; v < g.n; ++v) {
                if (!inQ[v]) continue;
                int b = bundle[loc[SplitGraph::in(v)]];
                Cap d = beta[v] - (b >= 0 ? fq.f[b] : 0);
                if (d >= lo && d < hi) batch.push_back(v);
            }
            if (!batch.empty() && double(batch.size()) >= batch_scale / std::ldexp(1.0, j)) {
                for (int v : batch) inQ[v] = 0, inQp[v] = 1;
                moved = true;
            }
        }
        if (!moved) break;
        if (++type1 > type1_budget) throw Fail{"too many bad-batch iterations"};
    }

    nQ = 0;
    for (int v = 0; v < g.n; ++v) nQ += inQ[v];
    has_Xstar = false;
    cut_capacity = 0;
    if (double(nQ) > sparse_tau()) {
        // split sink: Q bundles drain into t1, every other arc leaving J into t2
        int t1 = tp, t2 = tp + 1;
        Net two(tp + 2);
        for (const auto& a : net.arcs)
            if (a.v != tp) two.arcs.push_back({a.u, a.v, a.cap, 0});
        for (int k = 0; k < tp; ++k) {
            if (bundle[k] < 0) continue;
            int u = J.nodes[k];
            bool q = SplitGraph::is_in(u) && inQ[SplitGraph::vertex_of(u)];
            two.add(k, q ? t1 : t2, out_sum[k]);
        }
        EdgeCut ec = min_edge_cut(two, loc[S], t2);
        rec.final_cut = true;
        for (int v = 0; v < g.n; ++v)
            if (inQ[v] && !ec.side[loc[SplitGraph::in(v)]]) {
                inQ[v] = 0, inQp[v] = 1, ++rec.Q3p, --nQ;
            }
        std::vector<char> xs(nn, 0);
        for (int k = 0; k < tp; ++k)
            if (ec.side[k]) xs[J.nodes[k]] = 1;
        for (int u = 0; u < nn; ++u)
            if (xs[u]) for_out(u, [&](int a) {
                    if (!xs[H->to(a)]) cut_capacity += H->residual(a);
                });
        has_Xstar = true;
        rec.t1_source = ec.side[t1];
    }
    rec.Q = nQ;
    rec.Q_prime = 0;
    for (int v = 0; v < g.n; ++v) rec.Q_prime += inQp[v];
    if (ins && rep.good_pair) check_crossing();
}

void Run::check_crossing() {
    for (const auto& e : G.ledger)
        if (!shortcut_valid(ins->cut, e.node)) return;
    ++rep.crossing_checks;
    auto inX = [&](int u) {
        if (u == t) return false;
        int v = SplitGraph::vertex_of(u);
        return bool(in_L[v]) || (in_S[v] && SplitGraph::is_in(u));
    };
    bool same = true;
    for (int a = 0; a < H->num_arcs() && same; ++a) {
        if (!H->present(a)) continue;
        int x = H->from(a), y = H->to(a);
        bool crossing = inX(x) && !inX(y);
        bool listed = false;
        if (x != t && y != t) {
            int vx = SplitGraph::vertex_of(x), vy = SplitGraph::vertex_of(y);
            bool fwd_special = H->special(a) && ResidualView::is_fwd(a);
            bool regular_in_out = !H->special(a) && SplitGraph::is_in(x) && !SplitGraph::is_in(y);
            if (fwd_special && in_S[vx]) listed = true;
            if (regular_in_out && (in_L[vx] || in_S[vx]) && in_S[vy] && vx != vy) listed = true;
            if (regular_in_out && in_S[vx] && in_R[vy]) listed = true;
        }
        if (crossing != listed) same = false;
    }
    if (!same) ++rep.crossing_mismatches;
}

void Run::step3(int i, PhaseRecord& rec) {
    Cap Mp = p.M(i);
    std::vector<int> Qp;
    for (int v = 0; v < g.n; ++v)
        if (inQp[v]) Qp.push_back(v);
    OracleResponse r = ask(Qp);
    std::vector<char> yh(g.n, 0);
    for (int v : r.Yh) {
        yh[v] = 1;
        if (v != s) shortcut(SplitGraph::out(v), i, 3);
    }

    int nn = G.num_nodes();
    std::vector<int> Z, Zp;
    for (int v = 0; v < g.n; ++v) {
        if (!J.in[SplitGraph::in(v)]) Z.push_back(SplitGraph::in(v));
        if (!J.in[SplitGraph::out(v)]) Zp.push_back(SplitGraph::out(v));
    }
    double tau = sparse_tau();
    auto rng = substream(seed, {TAG_DIRECTED, uint64_t(s), uint64_t(i)});
    auto bad = directed_heavy_degree_estimation(view, Z, Zp, tau, Mp, double(p.W_max), rng, cfg.k);
    std::vector<char> is_bad(nn, 0);
    for (int x : bad) {
        is_bad[x] = 1;
        shortcut(x, i, 3);
    }

    bool q_big = double(nQ) > tau;
    double e6_bound = 2000 * tau * lgn() * lgW();
    std::vector<int> e6_count(nn, 0);
    auto vertex_ok = [&](int u) {
        if (u == t) return true;
        int v = SplitGraph::vertex_of(u);
        return bool(inU[v]) || v == s || (SplitGraph::is_in(u) && sink_target[v]);
    };
    auto in_gamma = [&](int u) { return u != t && u != S && !SplitGraph::is_in(u) && J.in[u]; };

    Net net(nn);
    std::vector<int> amap;
    for (int a = 0; a < H->num_arcs(); ++a) {
        if (!H->present(a)) continue;
        int x = H->from(a), y = H->to(a);
        if (!vertex_ok(x) || !vertex_ok(y)) continue;  // E1
        Cap c = H->residual(a);
        bool keep;
        if (H->special(a) || x == t || y == t) {
            keep = true;  // E2
            if (H->special(a) && ResidualView::is_fwd(a)) c = trim(c, Mp);
        } else if (J.in[x] || in_gamma(x) || in_gamma(y)) {
            keep = true;  // E3
        } else if (!SplitGraph::is_in(x) && SplitGraph::is_in(y) && inQp[SplitGraph::vertex_of(y)]) {
            int vy = SplitGraph::vertex_of(y), vx = SplitGraph::vertex_of(x);  // E4
            keep = !yh[vx] && std::binary_search(r.E.begin(), r.E.end(), std::make_pair(vy, vx));
        } else if (!SplitGraph::is_in(x) && SplitGraph::is_in(y) && inQ[SplitGraph::vertex_of(y)]) {
            keep = !q_big;  // E5
        } else {
            keep = !is_bad[x];  // E6
            if (keep && ++e6_count[x] > e6_bound) throw Fail{"vertex with too many unsparsified arcs"};
        }
        if (keep && c > 0) {
            net.add(x, y, c);
            amap.push_back(a);
        }
    }
    rec.H_prime_edges = amap.size();
    double sparse_budget = cfg.sparse_const * std::pow(nd(), 2 - 4 * p.epsilon) * lgn() * std::pow(lgW(), 3);
    if (double(amap.size()) > sparse_budget) violation("phase " + std::to_string(i) + ": sparsified graph above budget");

    Flow fl = flow_in_multiples(net, S, t, Mp);
    if (q_big && has_Xstar) {
        Cap slack = Cap(std::ceil(4 * std::pow(nd(), 1 - 4.4 * p.epsilon))) * Mp;
        if (fl.value < cut_capacity - slack) throw Fail{"sparsified flow far below the final cut capacity"};
    }
    std::vector<std::pair<int, Cap>> d;
    for (size_t k = 0; k < amap.size(); ++k)
        if (fl.f[k] > 0) d.push_back({amap[k], fl.f[k]});
    H->augment(d);
}

i64 Run::finish() {
    Net net(G.num_nodes());
    std::vector<int> emap;
    for (int e : H->support()) {
        net.add(G.edges[e].from, G.edges[e].to, G.edges[e].cap);
        emap.push_back(e);
    }
    Flow fs = max_flow(net, S, t);
    Net full = to_net(G);
    Flow ff;
    ff.f.assign(G.edges.size(), 0);
    ff.value = fs.value;
    for (size_t k = 0; k < emap.size(); ++k) ff.f[emap[k]] = fs.f[k];
    Cap value = fs.value;
    if (residual_reachable(full, ff, S)[t]) {
        // the support flow is not maximum in G''; fall back to the G'' maximum, still an upper bound
        rep.certified = false;
        value = max_flow(full, S, t).value;
    }
    Cap cap = p.units(p.W_max);
    if (value >= cap) return p.W_max;
    if (value % p.one() != 0) throw InvariantError("final flow value is not integral");
    return i64(value / p.one());
}

}  // namespace

SubroutineReport main_subroutine(const WeightedGraph& g, const std::vector<int>& T, int s,
                                 const SubroutineConfig& cfg, const OracleHandle& oracle, uint64_t seed,
                                 const Instrumentation* ins) {
    if (s < 0 || s >= g.n) throw InvariantError("main_subroutine: s out of range");
    if (std::find(T.begin(), T.end(), s) == T.end()) throw InvariantError("main_subroutine: s must lie in T");
    for (i64 w : g.w)
        if (w < 1) throw InvariantError("main_subroutine: weights must be at least 1");
    SubroutineReport rep;
    ParamBlock p = build_params(g, cfg.epsilon);
    auto Ts = terminals_apart(g, T, s);
    if (Ts.empty()) {
        rep.sentinel = true;
        rep.c_s = p.W_max;
        return rep;
    }
    if (cfg.mode == SubMode::Desk && !size_assumptions_hold(p)) {
        rep.exact_fallback = true;
        rep.opt_s = exact_opt_s(g, T, s);
        rep.c_s = *rep.opt_s;
        return rep;
    }
    if (cfg.compute_opt) rep.opt_s = exact_opt_s(g, T, s);
    Run run(g, T, s, cfg, oracle, seed, ins, rep);
    run.run_forced(Ts);
    return rep;
}

SubroutineReport main_subroutine(const WeightedGraph& g, const std::vector<int>& T, int s,
                                 const SubroutineConfig& cfg, uint64_t seed, const Instrumentation* ins) {
    ParamBlock p = build_params(g, cfg.epsilon);
    OracleHandle h = immediate_oracle(g, effective_delta(p, cfg), seed, s, OracleMode::Exact, cfg.k);
    return main_subroutine(g, T, s, cfg, h, seed, ins);
}

}  // namespace vcut
