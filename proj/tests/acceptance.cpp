// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "oracle.hpp"
#include "vcut/driver.hpp"
#include "vcut/flow.hpp"
#include "vcut/isolating.hpp"

using namespace vcut;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    failures += !ok;
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// lower-bound ledger shared by every criterion
struct Bounds {
    long checked = 0, violations = 0;
    void add(bool ok) {
        ++checked;
        violations += !ok;
    }
};

struct Structure {
    long cuts = 0, claim = 0, claim_bad = 0, cor = 0, cor_bad = 0, high = 0, high_bad = 0;
    long crossing_checks = 0, crossing_bad = 0;
};

// structural properties of one optimal cut, read in both orientations
void check_structure(const WeightedGraph& g, const VertexCut& cut, Structure& st) {
    ++st.cuts;
    i64 W = g.max_weight();
    for (int flip = 0; flip < 2; ++flip) {
        const auto& L = flip ? cut.R : cut.L;
        i64 wL = g.weight_of(L);
        for (int x : L) {
            std::vector<int> Sp;
            for (int v : cut.S)
                if (!g.has_edge(x, v)) Sp.push_back(v);
            ++st.claim;
            st.claim_bad += g.weight_of(Sp) > wL;
            for (i64 gamma = 1; gamma <= 2 * g.n; gamma *= 2) {
                long heavy = 0;
                for (int v : Sp) heavy += double(g.w[v]) >= double(W) / double(gamma);
                ++st.cor;
                st.cor_bad += heavy > i64(L.size()) * gamma;
            }
        }
        for (double eps : {1.0 / 45, 0.1, 0.25, 0.5}) {
            if (double(cut.S.size()) < std::pow(double(g.n), 1 - eps) * double(L.size())) continue;
            ++st.high;
            auto T = high_degree_set(g, eps);
            bool hit = false;
            for (int v : L) hit |= std::binary_search(T.begin(), T.end(), v);
            st.high_bad += !hit;
        }
    }
}

WeightedGraph suite_instance(int k, std::mt19937_64& rng) {
    static const double dens[] = {0.3, 0.5, 0.8};
    int n = 6 + int(rng() % 19);
    return oracle::random_graph(n, dens[k % 3], 1, 20, rng);
}

}  // namespace

int main() {
    Bounds bounds;
    Structure st;
    auto all_start = clock_type::now();

    // 1. exact pipeline against brute force
    {
        auto t0 = clock_type::now();
        std::mt19937_64 rng(20240601);
        int runs = 0, exact = 0, below = 0, invalid = 0;
        for (int k = 0; k < 500; ++k) {
            WeightedGraph g = suite_instance(k, rng);
            SolveOptions o;
            o.seed = uint64_t(k);
            o.mode = SubMode::Desk;
            o.verify = true;
            SolveReport r = solve(g, o);
            ++runs;
            const Verdict& v = *r.verdict;
            exact += v.kind == VerdictKind::Optimal;
            invalid += v.kind == VerdictKind::Invalid;
            below += r.value < *v.opt;

            // every candidate estimate against the exact cut of its own pair (transformed weights)
            WeightedGraph gp = make_weights_positive(g);
            for (const auto& e : r.estimates) {
                auto c = min_st_vertex_cut(gp, {e.x}, {e.y});
                bounds.add(c && e.c >= c->value);
            }
            // every subroutine value of two extra alg3 rounds against the exact s-T value
            for (uint64_t round = 0; round < 2; ++round) {
                auto a = alg3(gp, uint64_t(k) + 1000, round);
                for (const auto& run : a.runs) {
                    auto opt_s = exact_opt_s(gp, a.terminals.T, run.x);
                    if (opt_s) bounds.add(run.c >= *opt_s);
                }
            }
            // structure of the brute-force optimum (all optima on the smaller graphs)
            BruteResult br = brute_force_global_min_cut(g);
            if (g.n <= 14) {
                for (auto mc : oracle::all_min_cuts(g, br.cut.value)) {
                    VertexCut c;
                    for (int v = 0; v < g.n; ++v) {
                        if (mc.L >> v & 1) c.L.push_back(v);
                        if (mc.S >> v & 1) c.S.push_back(v);
                        if (mc.R >> v & 1) c.R.push_back(v);
                    }
                    c.value = br.cut.value;
                    check_structure(g, c, st);
                }
            } else {
                check_structure(g, br.cut, st);
            }
        }
        double secs = seconds_since(t0);
        double rate = double(exact) / runs;
        bool ok = rate >= 0.95 && below == 0 && invalid == 0 && secs <= 600;
        report(1, ok,
               std::to_string(exact) + "/" + std::to_string(runs) + " optimal (" + fmt("%.1f%%", 100 * rate) +
                   "), " + std::to_string(below) + " below OPT, " + std::to_string(invalid) + " invalid, " +
                   fmt("%.1fs", secs));
    }

    // 2. isolating cuts against per-terminal brute force
    {
        auto t0 = clock_type::now();
        std::mt19937_64 rng(77);
        int pairs = 0, terminals = 0, mismatches = 0;
        while (pairs < 200) {
            int n = 3 + int(rng() % 12);
            auto g = oracle::random_graph(n, 0.15 + 0.1 * double(rng() % 5), 1, 20, rng);
            std::vector<int> T;
            for (int v = 0; v < n; ++v)
                if (rng() % 3 == 0) T.push_back(v);
            if (T.size() < 2) continue;
            ++pairs;
            auto r = isolating_cuts(g, T);
            for (size_t k = 0; k < r.terminals.size(); ++k) {
                int v = r.terminals[k];
                std::vector<int> others;
                for (int u : r.terminals)
                    if (u != v) others.push_back(u);
                auto ref = oracle::st_cut(g, {v}, others);
                ++terminals;
                bool same = bool(r.finite[k]) == ref.has_value() && (!ref || r.value[k] == *ref);
                mismatches += !same;
                if (ref) bounds.add(r.value[k] >= *ref);
            }
        }
        double secs = seconds_since(t0);
        report(2, mismatches == 0 && secs <= 120,
               std::to_string(pairs) + " (graph, T) pairs, " + std::to_string(terminals) + " terminals, " +
                   std::to_string(mismatches) + " mismatches, " + fmt("%.1fs", secs));
    }

    // 3. s-t vertex cut against the split-graph edge cut and brute force
    {
        std::mt19937_64 rng(91);
        int cases = 0, mismatches = 0;
        while (cases < 500) {
            int n = 3 + int(rng() % 12);
            auto g = oracle::random_graph(n, 0.2 + 0.15 * double(rng() % 4), 1, 30, rng);
            int s = int(rng() % n), t = int(rng() % n);
            if (s == t || g.has_edge(s, t)) continue;
            ++cases;
            auto vc = min_st_vertex_cut(g, {s}, {t});
            i64 big = 1;
            for (i64 w : g.w) big += w;
            SplitGraph sg = make_split_graph(g, big, 0, nullptr);
            EdgeCut ec = min_edge_cut(to_net(sg), SplitGraph::out(s), SplitGraph::in(t));
            auto ref = oracle::st_cut(g, {s}, {t});
            bool ok = vc && ref && vc->value == *ref && Cap(vc->value) == ec.value;
            if (ok) {
                for (int e : ec.crossing) ok &= sg.edges[e].kind == EdgeKind::Special;
            }
            mismatches += !ok;
        }
        report(3, mismatches == 0, std::to_string(cases) + " (g, s, t) triples, " + std::to_string(mismatches) +
                                       " mismatches");
    }

    // 5. forced-mode invariants on planted instances
    {
        struct Profile {
            const char* name;
            double N;  // 0 keeps the derived thresholds
        };
        const Profile profiles[] = {{"derived", 0}, {"stress", 4}, {"step1-stress", 2}};
        std::string detail;
        bool ok = true;
        for (const auto& prof : profiles) {
            int runs = 0, violated = 0, audited_ok = 0, with_ledger = 0, below = 0, exact = 0, failed = 0;
            for (int t = 0; t < 100; ++t) {
                int n = 10 + t % 10, l = 1 + t % 3, k = 2 + t % 3, r = n - l - k;
                int m = (l + k) * (l + k - 1) / 2 + k * r + r * (r - 1) / 4;
                auto in = generate_instance(n, m, 20, Family::Planted, uint64_t(t), PlantSpec{l, k, 0});
                WeightedGraph gp = make_weights_positive(in.g);
                VertexCut cut = *in.plant;
                cut.value = gp.weight_of(cut.S);
                auto rng = substream(uint64_t(t), {31});
                int s = cut.L[rng() % cut.L.size()];
                std::vector<int> T{s};
                for (int v : cut.R)
                    if (rng() % 2) T.push_back(v);
                if (T.size() == 1) T.push_back(cut.R.front());
                for (int v : cut.S)
                    if (gp.has_edge(s, v) && rng() % 2) T.push_back(v);
                std::sort(T.begin(), T.end());

                SubroutineConfig cfg;
                cfg.mode = SubMode::Forced;
                if (prof.N > 0) {
                    cfg.k = EstimatorConstants::desk();
                    cfg.N_override = prof.N;
                    cfg.oracle_tau_override = 6;
                    cfg.sparse_tau_override = 6;
                }
                Instrumentation ins{cut};
                auto rep = main_subroutine(gp, T, s, cfg, uint64_t(t), &ins);
                ++runs;
                violated += !rep.violations.empty();
                for (const auto& v : rep.violations) std::fprintf(stderr, "  [%s] run %d: %s\n", prof.name, t, v.c_str());
                if (rep.failed)
                    std::fprintf(stderr, "  [%s] run %d failed in phase %d: %s\n", prof.name, t, rep.fail_phase,
                                 rep.fail_reason.c_str());
                audited_ok += rep.audited && rep.invalid_shortcuts == 0;
                with_ledger += !rep.ledger.empty();
                failed += rep.failed;
                below += rep.c_s < *rep.opt_s;
                exact += rep.c_s == *rep.opt_s;
                bounds.add(rep.c_s >= *rep.opt_s);
                st.crossing_checks += rep.crossing_checks;
                st.crossing_bad += rep.crossing_mismatches;
            }
            double audit_rate = double(audited_ok) / runs;
            bool prof_ok = violated == 0 && below == 0;
            // the audit threshold applies where the shortcut-validity argument holds (candidate pools
            // well above |L|); the step-1 stress profile is reported for information
            bool graded = prof.N == 0 || prof.N >= 3;
            if (graded) prof_ok &= audit_rate >= 0.9;
            ok &= prof_ok;
            detail += std::string("[") + prof.name + ": " + std::to_string(violated) + " runs with violations, audit " +
                      std::to_string(audited_ok) + "/" + std::to_string(runs) + ", ledgers " +
                      std::to_string(with_ledger) + ", exact " + std::to_string(exact) + ", failed " +
                      std::to_string(failed) + (graded ? "" : ", info only") + "] ";
        }
        report(5, ok, detail);
    }

    // 6. estimator error rates
    {
        auto t0 = clock_type::now();
        bool ok = true;
        std::string detail;
        for (const auto& e : oracle_stats(10000, 6)) {
            bool bulk = e.name == "subgraph_oracle_bulk";
            ok &= bulk ? e.errors == 0 : e.rate() <= 0.01;
            detail += e.name + " " + std::to_string(e.errors) + "/" + std::to_string(e.trials) + "; ";
        }
        report(6, ok, detail + fmt("%.1fs", seconds_since(t0)));
    }

    // 4. lower bounds gathered from criteria 1, 2 and 5
    report(4, bounds.violations == 0 && bounds.checked > 0,
           std::to_string(bounds.checked) + " values checked, " + std::to_string(bounds.violations) + " below their exact cut");

    // 7. structural properties on every brute-forced optimum
    {
        bool ok = st.claim_bad == 0 && st.cor_bad == 0 && st.high_bad == 0 && st.crossing_bad == 0 &&
                  st.crossing_checks > 0;
        report(7, ok,
               std::to_string(st.cuts) + " optima; neighbour claim " + std::to_string(st.claim_bad) + "/" +
                   std::to_string(st.claim) + ", heavy neighbours " + std::to_string(st.cor_bad) + "/" +
                   std::to_string(st.cor) + ", high degree " + std::to_string(st.high_bad) + "/" +
                   std::to_string(st.high) + ", crossing edges " + std::to_string(st.crossing_bad) + "/" +
                   std::to_string(st.crossing_checks) + " violations");
    }

    std::printf("total %.1fs, %d failing criteria\n", seconds_since(all_start), failures);
    return failures == 0 ? 0 : 1;
}
