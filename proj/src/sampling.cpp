#include "vcut/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace vcut {

static i64 w_max_of(const WeightedGraph& g) { return build_params(g).W_max; }

CutEstimate fallback_estimate(const WeightedGraph& g) {
    for (int x = 0; x < g.n; ++x)
        for (int y = x + 1; y < g.n; ++y)
            if (!g.has_edge(x, y)) return {w_max_of(g), x, y, true};
    throw NoCutError("graph is complete");
}

i64 alg1_repetitions(int n, double epsilon) {
    return i64(std::ceil(8 * std::pow(double(n), 1 - epsilon) * std::log(std::max(n, 2))));
}

i64 alg2_repetitions(int n) { return i64(std::ceil(12 * std::log(std::max(n, 2)))); }

CutEstimate alg1_fixed(const WeightedGraph& g, int i, i64 lambda, double epsilon, uint64_t seed,
                       IsolatingCache* cache) {
    if (g.n <= 1 || g.is_complete()) throw NoCutError("graph is complete");
    std::vector<int> U;
    for (int v = 0; v < g.n; ++v)
        if (g.w[v] >= (i64(1) << i) && g.w[v] < (i64(1) << (i + 1))) U.push_back(v);
    CutEstimate best;
    bool found = false;
    if (U.size() >= 2) {
        IsolatingCache local;
        if (!cache) cache = &local;
        auto rng = substream(seed, {TAG_ALG1, uint64_t(i), uint64_t(lambda)});
        std::bernoulli_distribution coin(1.0 / (2.0 * double(lambda)));
        i64 reps = alg1_repetitions(g.n, epsilon);
        for (i64 r = 0; r < reps; ++r) {
            std::vector<int> T;
            for (int v : U)
                if (coin(rng)) T.push_back(v);
            if (T.size() < 2) continue;
            auto it = cache->find(T);
            if (it == cache->end()) it = cache->emplace(T, isolating_cuts(g, T)).first;
            const IsolatingResult& res = it->second;
            int bx = -1;
            for (size_t k = 0; k < T.size(); ++k)
                if (res.finite[k] && (bx < 0 || res.value[k] < res.value[bx])) bx = int(k);
            if (bx < 0) continue;
            int x = res.terminals[bx];
            int y = res.terminals[bx == 0 ? 1 : 0];
            if (!found || res.value[bx] < best.c) {
                best = {res.value[bx], x, y, false};
                found = true;
            }
        }
    }
    if (!found || best.x == best.y || g.has_edge(best.x, best.y)) return fallback_estimate(g);
    return best;
}

CutEstimate alg1(const WeightedGraph& g, double epsilon, uint64_t seed) {
    if (g.n <= 1 || g.is_complete()) throw NoCutError("graph is complete");
    int top_i = ceil_log2(std::max<i64>(g.max_weight(), 1));
    int top_j = ceil_log2(std::max(g.n, 1));
    IsolatingCache cache;
    CutEstimate best;
    bool first = true;
    for (int i = 0; i <= top_i; ++i)
        for (int j = 0; j <= top_j; ++j) {
            CutEstimate e = alg1_fixed(g, i, i64(1) << j, epsilon, seed, &cache);
            if (first || e.c < best.c) best = e;
            first = false;
        }
    return best;
}

ProbeResult alg2_probe(const WeightedGraph& g, int x, uint64_t seed) {
    std::vector<int> Z;
    std::vector<double> wz;
    for (int v = 0; v < g.n; ++v)
        if (v != x && !g.has_edge(x, v)) {
            Z.push_back(v);
            wz.push_back(double(g.w[v]));
        }
    if (Z.empty()) throw NoCandidateError("vertex dominates the graph");
    bool all_zero = std::all_of(wz.begin(), wz.end(), [](double a) { return a == 0; });
    if (all_zero) std::fill(wz.begin(), wz.end(), 1.0);
    auto rng = substream(seed, {TAG_ALG2, uint64_t(x)});
    std::discrete_distribution<int> pick(wz.begin(), wz.end());
    std::map<int, i64> memo;
    ProbeResult best;
    i64 reps = alg2_repetitions(g.n);
    for (i64 r = 0; r < reps; ++r) {
        int y = Z[pick(rng)];
        auto it = memo.find(y);
        if (it == memo.end()) it = memo.emplace(y, min_st_vertex_cut(g, {x}, {y})->value).first;
        if (best.y < 0 || it->second < best.c) best = {it->second, y};
    }
    return best;
}

std::vector<int> high_degree_set(const WeightedGraph& g, double epsilon) {
    double th = std::pow(double(g.n), 1 - epsilon);
    std::vector<int> T;
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) >= th) T.push_back(v);
    return T;
}

CutEstimate alg2(const WeightedGraph& g, double epsilon, uint64_t seed) {
    if (g.n <= 1 || g.is_complete()) throw NoCutError("graph is complete");
    CutEstimate best;
    bool found = false;
    for (int x : high_degree_set(g, epsilon)) {
        ProbeResult p;
        try {
            p = alg2_probe(g, x, seed);
        } catch (const NoCandidateError&) {
            continue;
        }
        if (!found || p.c < best.c) {
            best = {p.c, x, p.y, false};
            found = true;
        }
    }
    return found ? best : fallback_estimate(g);
}

CutEstimate nondense_combined(const WeightedGraph& g, double epsilon, uint64_t seed) {
    CutEstimate a = alg1(g, epsilon, seed);
    CutEstimate b = alg2(g, epsilon, seed);
    return b.c <= a.c ? b : a;
}

std::vector<int> TerminalSet::Tx(const WeightedGraph& g, int x) const {
    std::vector<int> r;
    for (int v : T)
        if (v != x && !g.has_edge(x, v)) r.push_back(v);
    return r;
}

TerminalSet select_terminals(const WeightedGraph& g, uint64_t seed, uint64_t round) {
    TerminalSet ts;
    auto rng = substream(seed, {TAG_TERMINALS, round});
    double nW = double(std::max(g.n, 1)) * double(pow2_above(g.max_weight()));
    int top = std::max(1, int(std::ceil(std::log2(nW) - 1e-12)));
    ts.i = std::uniform_int_distribution<int>(1, top)(rng);
    double scale = std::ldexp(1.0, ts.i + 1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int v = 0; v < g.n; ++v) {
        double p = std::min(1.0, double(g.w[v]) / scale);
        if (u(rng) < p) ts.T.push_back(v);
    }
    return ts;
}

bool is_good_terminal_set(const WeightedGraph& g, const std::vector<int>& T, const VertexCut& cut, int* xo) {
    std::vector<int> part(g.n, 0);
    for (int v : cut.L) part[v] = 1;
    for (int v : cut.S) part[v] = 2;
    for (int v : cut.R) part[v] = 3;
    int x = -1, inL = 0;
    bool inR = false;
    for (int v : T) {
        if (part[v] == 1) ++inL, x = v;
        if (part[v] == 3) inR = true;
    }
    if (inL != 1 || !inR) return false;
    for (int v : T)
        if (part[v] == 2 && !g.has_edge(x, v)) return false;
    if (xo) *xo = x;
    return true;
}

}  // namespace vcut
