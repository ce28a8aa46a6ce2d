#include "vcut/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace vcut {

namespace {

double w_max_of(const WeightedGraph& g) {
    return double(pow2_at_least(2.0 * std::max(g.n, 1) * double(pow2_above(g.max_weight()))));
}

std::vector<int> bernoulli(const std::vector<int>& pool, double p, std::mt19937_64& rng) {
    std::vector<int> T;
    if (p >= 1) return pool;
    std::bernoulli_distribution coin(p);
    for (int v : pool)
        if (coin(rng)) T.push_back(v);
    return T;
}

std::vector<char> member(int n, const std::vector<int>& xs) {
    std::vector<char> m(n, 0);
    for (int v : xs) m[v] = 1;
    return m;
}

}  // namespace

DigraphView view_of(const std::vector<std::vector<std::pair<int, Cap>>>& out_lists) {
    auto in_lists = std::make_shared<std::vector<std::vector<std::pair<int, Cap>>>>(out_lists.size());
    for (size_t u = 0; u < out_lists.size(); ++u)
        for (auto [v, c] : out_lists[u]) (*in_lists)[v].push_back({int(u), c});
    auto outs = std::make_shared<std::vector<std::vector<std::pair<int, Cap>>>>(out_lists);
    DigraphView d;
    d.n = int(out_lists.size());
    d.out = [outs](int u, const DigraphView::Visit& f) {
        for (auto [v, c] : (*outs)[u]) f(v, c);
    };
    d.in = [in_lists](int v, const DigraphView::Visit& f) {
        for (auto [u, c] : (*in_lists)[v]) f(u, c);
    };
    return d;
}

std::vector<int> degree_estimation(const WeightedGraph& g, const std::vector<int>& Z,
                                   const std::vector<int>& Zp, double tau, std::mt19937_64& rng,
                                   const EstimatorConstants& k) {
    double L = k.factor(g.n, w_max_of(g));
    if (Z.empty() || tau > double(Z.size()) / (k.cutoff * L)) return {};
    auto T = bernoulli(Z, std::min(1.0, k.sample * L / tau), rng);
    if (double(T.size()) > k.oversize * double(Z.size()) * L / tau) return {};
    auto inZp = member(g.n, Zp);
    std::vector<int> cnt(g.n, 0);
    for (int u : T)
        for (int v : g.adj[u])
            if (inZp[v]) ++cnt[v];
    std::vector<int> A;
    for (int v : Zp)
        if (cnt[v] >= k.keep * L) A.push_back(v);
    std::sort(A.begin(), A.end());
    return A;
}

std::vector<int> directed_heavy_degree_estimation(const DigraphView& g, const std::vector<int>& Z,
                                                  const std::vector<int>& Zp, double tau, Cap c_star,
                                                  double W, std::mt19937_64& rng,
                                                  const EstimatorConstants& k) {
    double L = k.factor(g.n, W);
    if (Zp.empty() || tau > double(Zp.size()) / (k.cutoff * L)) return {};
    auto T = bernoulli(Zp, std::min(1.0, k.sample * L / tau), rng);
    if (double(T.size()) > k.oversize * double(Zp.size()) * L / tau) return {};
    auto inZ = member(g.n, Z);
    std::vector<int> cnt(g.n, 0);
    for (int u : T)
        g.in(u, [&](int v, Cap c) {
            if (inZ[v] && c >= c_star) ++cnt[v];
        });
    std::vector<int> A;
    for (int v : Z)
        if (cnt[v] >= k.keep * L) A.push_back(v);
    std::sort(A.begin(), A.end());
    return A;
}

HeavyWitness heavy_vertex(const DigraphView& g, const std::vector<int>& Z, const std::vector<int>& Zp,
                          i64 tau, Cap c_star, double W, std::mt19937_64& rng,
                          const EstimatorConstants& k) {
    HeavyWitness res;
    double L = k.factor(g.n, W);
    if (Z.empty() || double(tau) > double(Z.size()) / (k.cutoff * L)) return res;
    auto T = bernoulli(Z, std::min(1.0, k.sample * L / double(tau)), rng);
    if (double(T.size()) >= k.oversize * double(Z.size()) * L / double(tau)) return res;
    auto inZ = member(g.n, Z), inZp = member(g.n, Zp);
    std::vector<int> cnt(g.n, 0);
    for (int u : T)
        g.out(u, [&](int v, Cap c) {
            if (inZp[v] && c >= c_star) ++cnt[v];
        });
    int pick = -1;
    for (int v : Zp)
        if (cnt[v] >= k.keep * L && (pick < 0 || v < pick)) pick = v;
    if (pick < 0) return res;
    std::vector<int> src;
    std::vector<char> seen(g.n, 0);
    g.in(pick, [&](int u, Cap c) {
        if (inZ[u] && c >= c_star && !seen[u]) {
            seen[u] = 1;
            src.push_back(u);
        }
    });
    if (i64(src.size()) < tau) return res;
    src.resize(tau);
    res.found = true;
    res.v = pick;
    res.sources = std::move(src);
    return res;
}

double oracle_tau(int n, double delta) { return std::pow(double(n), 1 - delta) / (1000 * lg(n)); }

std::vector<std::pair<int, int>> oracle_edges(const WeightedGraph& g, const std::vector<int>& Z,
                                              const std::vector<int>& Yl) {
    auto inY = member(g.n, Yl);
    std::vector<std::pair<int, int>> E;
    for (int z : Z)
        for (int y : g.adj[z])
            if (inY[y]) E.emplace_back(z, y);
    std::sort(E.begin(), E.end());
    return E;
}

static OracleResponse partition(const WeightedGraph& g, const std::vector<int>& Z, double delta,
                                std::mt19937_64& rng, OracleMode mode, const EstimatorConstants& k) {
    OracleResponse r;
    r.tau = oracle_tau(g.n, delta);
    r.precondition_ok = delta >= 1 / std::sqrt(lg(g.n));
    std::vector<int> all(g.n);
    for (int v = 0; v < g.n; ++v) all[v] = v;
    if (mode == OracleMode::Compliant) {
        r.Yh = degree_estimation(g, Z, all, r.tau, rng, k);
    } else {
        auto inZ = member(g.n, Z);
        for (int v = 0; v < g.n; ++v) {
            int c = 0;
            for (int u : g.adj[v]) c += inZ[u];
            if (c >= r.tau) r.Yh.push_back(v);
        }
    }
    auto inH = member(g.n, r.Yh);
    for (int v = 0; v < g.n; ++v)
        if (!inH[v]) r.Yl.push_back(v);
    return r;
}

OracleResponse subgraph_oracle(const WeightedGraph& g, const std::vector<int>& Z, double delta,
                               std::mt19937_64& rng, OracleMode mode, const EstimatorConstants& k) {
    OracleResponse r = partition(g, Z, delta, rng, mode, k);
    r.E = oracle_edges(g, Z, r.Yl);
    return r;
}

std::vector<OracleResponse> subgraph_oracle_bulk(const WeightedGraph& g,
                                                 const std::vector<std::vector<int>>& queries,
                                                 double delta, uint64_t seed,
                                                 const std::vector<std::pair<uint64_t, uint64_t>>& keys,
                                                 OracleMode mode, const EstimatorConstants& k) {
    if (keys.size() != queries.size()) throw InvariantError("one key per query required");
    if (int(queries.size()) > std::max(g.n, 1)) throw InvariantError("more than n bulk queries");
    int q = int(queries.size());
    std::vector<OracleResponse> res(q);
    for (int i = 0; i < q; ++i) {
        auto rng = substream(seed, {TAG_ORACLE, keys[i].first, keys[i].second});
        res[i] = partition(g, queries[i], delta, rng, mode, k);
    }
    // tripartite graph: a_v (v), b_u (n + u), c_i (2n + i); edges a_v-b_u for every edge of G
    // in both orientations, a_v-c_i for v in Z_i, c_i-b_u for u in Yl_i
    int n = g.n;
    std::vector<std::vector<int>> adjA(n), adjC_A(q), adjC_B(q);
    for (auto [u, v] : g.edges) {
        adjA[u].push_back(v);
        adjA[v].push_back(u);
    }
    for (auto& l : adjA) std::sort(l.begin(), l.end());
    for (int i = 0; i < q; ++i) {
        adjC_A[i] = queries[i];
        std::sort(adjC_A[i].begin(), adjC_A[i].end());
        adjC_B[i] = res[i].Yl;
    }
    // each triangle contains exactly one c_i: intersect N(a_v) within B with N(c_i) within B
    std::vector<int> markB(n, -1);
    for (int i = 0; i < q; ++i) {
        for (int u : adjC_B[i]) markB[u] = i;
        for (int v : adjC_A[i])
            for (int u : adjA[v])
                if (markB[u] == i) res[i].E.emplace_back(v, u);
        std::sort(res[i].E.begin(), res[i].E.end());
    }
    return res;
}

bool oracle_errs(const WeightedGraph& g, const std::vector<int>& Z, const OracleResponse& r, double delta) {
    auto inZ = member(g.n, Z);
    double hi = std::pow(double(g.n), 1 - delta) * std::pow(lg(w_max_of(g)), 2);
    auto cnt = [&](int v) {
        int c = 0;
        for (int u : g.adj[v]) c += inZ[u];
        return c;
    };
    for (int v : r.Yh)
        if (cnt(v) < r.tau) return true;
    for (int v : r.Yl)
        if (cnt(v) > hi) return true;
    return false;
}

}  // namespace vcut
