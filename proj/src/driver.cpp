#include "vcut/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "vcut/flow.hpp"

namespace vcut {

// ------------------------------------------------------------------ alg3

double alg3_repetitions(int n, i64 W_prime) {
    double ln = lg(n);
    return std::ceil(std::ldexp(1.0, 18) * lg(double(W_prime)) * ln * ln * ln * ln);
}

Alg3Result alg3(const WeightedGraph& g, uint64_t seed, uint64_t round, const Alg3Config& cfg) {
    if (g.n <= 1 || g.is_complete()) throw CompleteGraphError("graph is complete");
    Alg3Result res;
    res.terminals = select_terminals(g, seed, round);
    const auto& T = res.terminals.T;
    uint64_t sub_seed = substream(seed, {TAG_ALG3, round})();
    int k = int(T.size());
    res.runs.resize(k);
    for (int a = 0; a < k; ++a) res.runs[a].x = T[a];

    bool bulk = cfg.sub.mode == SubMode::Forced && cfg.schedule == OracleSchedule::Bulk;
    ParamBlock p = build_params(g, cfg.sub.epsilon);
    double delta = effective_delta(p, cfg.sub);
    if (!bulk) {
        for (auto& r : res.runs) {
            OracleHandle h = immediate_oracle(g, delta, sub_seed, r.x, OracleMode::Exact, cfg.sub.k);
            r.report = main_subroutine(g, T, r.x, cfg.sub, h, sub_seed, cfg.ins);
        }
    } else {
        // every run is replayed up to its next query; all pending queries are then answered together
        std::vector<std::vector<OracleResponse>> answers(k);
        std::vector<char> done(k, 0);
        for (;;) {
            std::vector<std::vector<int>> queries;
            std::vector<std::pair<uint64_t, uint64_t>> keys;
            std::vector<int> who;
            for (int a = 0; a < k; ++a) {
                if (done[a]) continue;
                auto& known = answers[a];
                OracleHandle h = [&known](const std::vector<int>& Z, int call) {
                    if (call < int(known.size())) return known[call];
                    throw QueryPending{Z, call};
                };
                try {
                    res.runs[a].report = main_subroutine(g, T, res.runs[a].x, cfg.sub, h, sub_seed, cfg.ins);
                    done[a] = 1;
                } catch (const QueryPending& q) {
                    queries.push_back(q.Z);
                    keys.push_back({uint64_t(res.runs[a].x), uint64_t(q.call)});
                    who.push_back(a);
                }
            }
            if (queries.empty()) break;
            auto out = subgraph_oracle_bulk(g, queries, delta, sub_seed, keys, OracleMode::Exact, cfg.sub.k);
            for (size_t q = 0; q < out.size(); ++q) answers[who[q]].push_back(std::move(out[q]));
            ++res.bulk_rounds;
        }
    }

    int best = -1;
    for (int a = 0; a < k; ++a) {
        auto& r = res.runs[a];
        r.c = r.report.c_s;
        if (r.report.sentinel) continue;
        if (best < 0 || r.c < res.runs[best].c) best = a;
    }
    if (best < 0) {
        res.est = fallback_estimate(g);
        return res;
    }
    int x = res.runs[best].x;
    int y = res.terminals.Tx(g, x).front();
    auto c = min_st_vertex_cut(g, {x}, {y});
    res.est = {c->value, x, y, false};
    return res;
}

// ------------------------------------------------------------------ solve

std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Optimal: return "optimal";
        case VerdictKind::Suboptimal: return "suboptimal";
        case VerdictKind::Invalid: return "invalid";
        default: return "unknown";
    }
}

Verdict verify(const WeightedGraph& g, const VertexCut& cut, int brute_limit) {
    Verdict v;
    BruteResult br = brute_force_global_min_cut(g, brute_limit);
    if (br.complete) throw CompleteGraphError("graph is complete");
    v.opt = br.cut.value;
    if (!is_valid_cut(g, cut)) {
        v.kind = VerdictKind::Invalid;
        return v;
    }
    v.gap = cut.value - br.cut.value;
    v.kind = v.gap == 0 ? VerdictKind::Optimal : VerdictKind::Suboptimal;
    if (v.gap < 0) throw InvariantError("valid cut below the brute-force optimum");
    return v;
}

SolveReport solve(const WeightedGraph& g, const SolveOptions& opt) {
    if (g.n <= 1 || g.is_complete()) throw CompleteGraphError("graph is complete");
    using clock = std::chrono::steady_clock;
    SolveReport rep;
    rep.seed = opt.seed;
    rep.mode = opt.mode;
    auto stage = [&](const std::string& name, clock::time_point since) {
        rep.timings.push_back({name, std::chrono::duration<double, std::milli>(clock::now() - since).count()});
    };

    auto t0 = clock::now();
    WeightedGraph gp = make_weights_positive(g);
    double x = g.m() > 1 ? std::log(double(g.m())) / std::log(double(g.n)) : 0;
    std::vector<CutEstimate>& est = rep.estimates;

    if (opt.strategy == Strategy::M32) {
        double eps = std::clamp(1 - x / 2, 0.01, 0.5);
        est.push_back(nondense_combined(gp, eps, opt.seed));
        rep.algorithm = "m32";
        stage("nondense", t0);
    } else {
        bool sparse = double(g.m()) <= std::pow(double(g.n), 1.98);
        if (sparse) {
            est.push_back(nondense_combined(gp, 1.0 / 100, opt.seed));
            stage("nondense", t0);
        } else {
            est.push_back(alg1(gp, 1.0 / 45, opt.seed));
            stage("alg1", t0);
        }
        auto t1 = clock::now();
        double full = alg3_repetitions(gp.n, pow2_above(gp.max_weight()));
        int reps = int(std::min<double>(opt.max_alg3_reps, full));
        Alg3Config cfg;
        cfg.sub.mode = opt.mode;
        for (int r = 0; r < reps; ++r) est.push_back(alg3(gp, opt.seed, uint64_t(r), cfg).est);
        stage("alg3", t1);
        rep.algorithm = sparse ? "nondense+alg3" : "alg1+alg3";
    }

    auto t2 = clock::now();
    const CutEstimate* best = &est.front();
    for (const auto& e : est)
        if (e.c < best->c) best = &e;
    auto c = min_st_vertex_cut(gp, {best->x}, {best->y});
    if (!c) throw InvariantError("selected pair cannot be separated");
    rep.cut = to_vertex_cut(g, *c);
    rep.cut.value = g.weight_of(rep.cut.S);
    rep.value = rep.cut.value;
    stage("recover", t2);
    if (!is_valid_cut(g, rep.cut)) throw InvariantError("solver produced an invalid cut");

    if (opt.verify) {
        auto t3 = clock::now();
        try {
            rep.verdict = verify(g, rep.cut, opt.brute_limit);
        } catch (const SizeLimitError&) {
            rep.verdict = Verdict{};
        }
        stage("verify", t3);
    }
    return rep;
}

// ------------------------------------------------------------------ generators

Family parse_family(const std::string& s) {
    if (s == "gnm") return Family::Gnm;
    if (s == "planted" || s == "planted_cut") return Family::Planted;
    if (s == "starmix" || s == "star_mix") return Family::StarMix;
    throw ParseError("unknown family: " + s);
}

namespace {

using Pair = std::pair<int, int>;

Pair ordered(int a, int b) { return a < b ? Pair{a, b} : Pair{b, a}; }

// adds `extra` distinct pairs drawn from `pool` (minus those already present)
void add_random_pairs(std::set<Pair>& E, std::vector<Pair> pool, i64 extra, std::mt19937_64& rng) {
    std::vector<Pair> free;
    for (auto pr : pool)
        if (!E.count(pr)) free.push_back(pr);
    if (extra > i64(free.size())) throw InfeasibleError("not enough free vertex pairs for the requested m");
    std::shuffle(free.begin(), free.end(), rng);
    for (i64 k = 0; k < extra; ++k) E.insert(free[k]);
}

std::vector<Pair> all_pairs(const std::vector<int>& vs) {
    std::vector<Pair> out;
    for (size_t a = 0; a < vs.size(); ++a)
        for (size_t b = a + 1; b < vs.size(); ++b) out.push_back(ordered(vs[a], vs[b]));
    return out;
}

}  // namespace

Instance generate_instance(int n, int m, i64 w_max, Family family, uint64_t seed, const PlantSpec& plant) {
    if (n < 2) throw InfeasibleError("need at least two vertices");
    if (w_max < 1) throw InfeasibleError("w_max must be at least 1");
    i64 pairs = i64(n) * (n - 1) / 2;
    if (m < 0 || m >= pairs) throw InfeasibleError("m must satisfy 0 <= m < n(n-1)/2");
    auto rng = substream(seed, {TAG_GEN, uint64_t(family), uint64_t(n), uint64_t(m)});
    std::uniform_int_distribution<i64> wd(1, w_max);
    std::vector<i64> w(n);
    for (auto& x : w) x = wd(rng);
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::set<Pair> E;
    Instance inst;

    if (family == Family::Gnm) {
        add_random_pairs(E, all_pairs(ids), m, rng);
    } else if (family == Family::Planted) {
        std::shuffle(ids.begin(), ids.end(), rng);
        int l = plant.L > 0 ? plant.L : std::max(1, n / 6);
        int k = plant.S > 0 ? plant.S : std::max(1, n / 5);
        if (l + k >= n) throw InfeasibleError("planted cut leaves R empty");
        std::vector<int> L(ids.begin(), ids.begin() + l), S(ids.begin() + l, ids.begin() + l + k),
            R(ids.begin() + l + k, ids.end());
        // L+S and S+R are cliques, so S lies in every vertex cut and w(S) is the optimum
        std::vector<int> LS(L);
        LS.insert(LS.end(), S.begin(), S.end());
        for (auto pr : all_pairs(LS)) E.insert(pr);
        for (int a : S)
            for (int b : R) E.insert(ordered(a, b));
        i64 extra = m - i64(E.size());
        if (extra < 0)
            throw InfeasibleError("planted cut needs m >= " + std::to_string(E.size()));
        add_random_pairs(E, all_pairs(R), extra, rng);
        if (plant.S_weight > 0) {
            if (plant.S_weight < k) throw InfeasibleError("S weight below |S|");
            i64 rest = plant.S_weight - k;
            for (int a = 0; a < k; ++a) {
                i64 share = a + 1 == k ? rest : std::uniform_int_distribution<i64>(0, rest)(rng);
                w[S[a]] = 1 + share;
                rest -= share;
            }
        }
        std::sort(L.begin(), L.end());
        std::sort(S.begin(), S.end());
        std::sort(R.begin(), R.end());
        i64 ws = 0;
        for (int v : S) ws += w[v];
        inst.plant = VertexCut{L, S, R, ws};
    } else {
        int h = std::max(1, n / 8);
        std::shuffle(ids.begin(), ids.end(), rng);
        std::vector<int> hubs(ids.begin(), ids.begin() + h);
        for (int a = h; a < n; ++a) {
            int links = 1 + int(rng() % 2);
            for (int b = 0; b < links; ++b) E.insert(ordered(ids[a], hubs[rng() % h]));
        }
        i64 extra = m - i64(E.size());
        if (extra < 0) throw InfeasibleError("star mix needs m >= " + std::to_string(E.size()));
        add_random_pairs(E, all_pairs(ids), extra, rng);
    }
    inst.g = WeightedGraph::from_edges(n, w, std::vector<Pair>(E.begin(), E.end()));
    if (inst.g.is_complete()) throw InfeasibleError("generated graph is complete");
    return inst;
}

// ------------------------------------------------------------------ bench

std::vector<BenchRow> bench(const std::string& suite_dir, int trials, uint64_t seed, Strategy strategy,
                            int brute_limit) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(suite_dir))
        if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<BenchRow> rows;
    for (const auto& f : files) {
        WeightedGraph g = load_graph(f.string());
        if (g.n <= 1 || g.is_complete()) continue;
        std::optional<i64> opt;
        if (g.n <= brute_limit) opt = brute_force_global_min_cut(g, brute_limit).cut.value;
        for (int t = 0; t < trials; ++t) {
            BenchRow r;
            r.instance = f.filename().string();
            r.n = g.n;
            r.m = g.m();
            r.strategy = strategy == Strategy::Auto ? "auto" : "m32";
            r.seed = seed + uint64_t(t);
            auto t0 = std::chrono::steady_clock::now();
            SolveOptions o;
            o.strategy = strategy;
            o.seed = r.seed;
            SolveReport sr = solve(g, o);
            r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            r.value = sr.value;
            r.opt = opt;
            r.match = opt && *opt == sr.value;
            rows.push_back(r);
        }
    }
    return rows;
}

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << "instance,n,m,strategy,seed,value,opt,match,wall_ms\n";
    for (const auto& r : rows)
        out << r.instance << ',' << r.n << ',' << r.m << ',' << r.strategy << ',' << r.seed << ',' << r.value << ','
            << (r.opt ? std::to_string(*r.opt) : "") << ',' << (r.opt ? (r.match ? "1" : "0") : "") << ','
            << r.wall_ms << '\n';
}

// ------------------------------------------------------------------ estimator statistics

std::vector<ErrorRate> oracle_stats(int trials, uint64_t seed) {
    const EstimatorConstants k = EstimatorConstants::desk();
    ErrorRate deg{"degree_estimation"}, dir{"directed_heavy_degree_estimation"}, heavy{"heavy_vertex"},
        orc{"subgraph_oracle"}, blk{"subgraph_oracle_bulk"};
    WeightedGraph g;
    for (int t = 0; t < trials; ++t) {
        auto rng = substream(seed, {TAG_GEN, 100, uint64_t(t)});
        if (t % 100 == 0) {
            int n = 160;
            double p = 0.2 + 0.6 * std::uniform_real_distribution<double>(0, 1)(rng);
            std::vector<Pair> E;
            std::bernoulli_distribution coin(p);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    if (coin(rng)) E.push_back({a, b});
            g = WeightedGraph::from_edges(n, std::vector<i64>(n, 1), E);
        }
        int n = g.n;
        double W = double(pow2_at_least(2.0 * n * double(pow2_above(g.max_weight()))));
        double L = k.factor(n, W);

        // undirected degree estimation
        {
            std::vector<int> Z, Zp;
            for (int v = 0; v < n; ++v) (rng() % 2 ? Z : Zp).push_back(v);
            double tau = 1 + double(rng() % 8);
            auto A = degree_estimation(g, Z, Zp, tau, rng, k);
            std::vector<char> inZ(n, 0), inA(n, 0);
            for (int v : Z) inZ[v] = 1;
            for (int v : A) inA[v] = 1;
            bool err = false;
            for (int v : Zp) {
                int c = 0;
                for (int u : g.adj[v]) c += inZ[u];
                if ((inA[v] && c < tau) || (!inA[v] && c >= k.err * tau * L)) err = true;
            }
            ++deg.trials;
            deg.errors += err;
        }
        // directed variant and heavy vertex on a random capacitated digraph
        {
            int dn = 120;
            std::vector<std::vector<std::pair<int, Cap>>> out(dn);
            double p = 0.1 + 0.5 * std::uniform_real_distribution<double>(0, 1)(rng);
            std::bernoulli_distribution coin(p);
            for (int a = 0; a < dn; ++a)
                for (int b = 0; b < dn; ++b)
                    if (a != b && coin(rng)) out[a].push_back({b, Cap(1 + rng() % 8)});
            DigraphView view = view_of(out);
            std::vector<int> Z, Zp;
            for (int v = 0; v < dn; ++v) (rng() % 2 ? Z : Zp).push_back(v);
            std::vector<char> inZ(dn, 0), inZp(dn, 0);
            for (int v : Z) inZ[v] = 1;
            for (int v : Zp) inZp[v] = 1;
            Cap cstar = Cap(1 + rng() % 6);
            double tau = 1 + double(rng() % 6);
            double Wd = 64;
            double Ld = k.factor(dn, Wd);
            auto A = directed_heavy_degree_estimation(view, Z, Zp, tau, cstar, Wd, rng, k);
            std::vector<char> inA(dn, 0);
            for (int v : A) inA[v] = 1;
            bool err = false;
            for (int v : Z) {
                int c = 0;
                for (auto [u, cap] : out[v]) c += inZp[u] && cap >= cstar;
                if ((inA[v] && c < tau) || (!inA[v] && c >= k.err * tau * Ld)) err = true;
            }
            ++dir.trials;
            dir.errors += err;

            i64 itau = 1 + i64(rng() % 4);
            HeavyWitness hw = heavy_vertex(view, Z, Zp, itau, cstar, Wd, rng, k);
            std::vector<int> indeg(dn, 0);
            for (int u : Z)
                for (auto [v, cap] : out[u])
                    if (inZp[v] && cap >= cstar) ++indeg[v];
            bool herr = false;
            if (hw.found) {
                std::set<int> distinct(hw.sources.begin(), hw.sources.end());
                if (!inZp[hw.v] || i64(distinct.size()) != itau) herr = true;
                for (int u : hw.sources) {
                    bool ok = false;
                    for (auto [v, cap] : out[u]) ok |= v == hw.v && cap >= cstar;
                    if (!inZ[u] || !ok) herr = true;
                }
            } else {
                for (int v : Zp)
                    if (indeg[v] >= k.err * double(itau) * Ld) herr = true;
            }
            ++heavy.trials;
            heavy.errors += herr;
        }
        // oracle in compliant mode, threshold around a handful of neighbours, and bulk equality
        {
            std::vector<std::vector<int>> qs(1 + rng() % 4);
            for (auto& Z : qs)
                for (int v = 0; v < n; ++v)
                    if (rng() % 3 == 0) Z.push_back(v);
            double want_tau = 2 + double(rng() % 4);
            double delta = 1 - std::log(want_tau * 1000 * lg(n)) / std::log(double(n));
            auto r = subgraph_oracle(g, qs[0], delta, rng, OracleMode::Compliant, k);
            ++orc.trials;
            orc.errors += oracle_errs(g, qs[0], r, delta);

            std::vector<std::pair<uint64_t, uint64_t>> keys;
            for (size_t q = 0; q < qs.size(); ++q) keys.push_back({uint64_t(t), q});
            auto out = subgraph_oracle_bulk(g, qs, delta, seed, keys, OracleMode::Compliant, k);
            bool mismatch = false;
            for (size_t q = 0; q < qs.size(); ++q)
                if (out[q].E != oracle_edges(g, qs[q], out[q].Yl)) mismatch = true;
            ++blk.trials;
            blk.errors += mismatch;
        }
    }
    return {deg, dir, heavy, orc, blk};
}

}  // namespace vcut
