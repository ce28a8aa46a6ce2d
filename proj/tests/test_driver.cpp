#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracle.hpp"
#include "vcut/driver.hpp"

using namespace vcut;

namespace {

WeightedGraph p3() { return WeightedGraph::from_edges(3, {5, 3, 7}, {{0, 1}, {1, 2}}); }

WeightedGraph complete(int n) {
    std::vector<std::pair<int, int>> E;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) E.push_back({a, b});
    return WeightedGraph::from_edges(n, std::vector<i64>(n, 1), E);
}

}  // namespace

TEST_CASE("solve P3") {
    auto r = solve(p3());
    CHECK(r.value == 3);
    CHECK(r.cut.S == std::vector<int>{1});
    CHECK(is_valid_cut(p3(), r.cut));
    SolveOptions m32;
    m32.strategy = Strategy::M32;
    CHECK(solve(p3(), m32).value == 3);
}

TEST_CASE("solve rejects complete graphs") {
    CHECK_THROWS_AS(solve(complete(5)), CompleteGraphError);
    CHECK_THROWS_AS(alg3(complete(5), 1, 0), CompleteGraphError);
}

TEST_CASE("verify verdicts") {
    auto g = p3();
    SolveOptions o;
    o.verify = true;
    auto r = solve(g, o);
    REQUIRE(r.verdict);
    CHECK(r.verdict->kind == VerdictKind::Optimal);
    CHECK(verify(g, VertexCut{{0}, {}, {1, 2}, 0}).kind == VerdictKind::Invalid);
    // path of four with unit weights: cutting both middle vertices costs one more than the optimum
    auto p4 = WeightedGraph::from_edges(4, {1, 1, 1, 1}, {{0, 1}, {1, 2}, {2, 3}});
    auto v = verify(p4, VertexCut{{0}, {1, 2}, {3}, 2});
    CHECK(v.kind == VerdictKind::Suboptimal);
    CHECK(v.gap == 1);
    CHECK_THROWS_AS(verify(WeightedGraph(30), VertexCut{}), SizeLimitError);
}

TEST_CASE("solve is exact on random graphs and never below the optimum") {
    std::mt19937_64 rng(23);
    int exact = 0, total = 0;
    for (int t = 0; t < 40; ++t) {
        int n = 6 + int(rng() % 11);
        auto g = oracle::random_graph(n, 0.3 + 0.25 * (t % 3), 1, 20, rng);
        auto opt = oracle::global_min_cut(g);
        if (!opt) continue;
        SolveOptions o;
        o.seed = uint64_t(t);
        o.max_alg3_reps = 8;
        auto r = solve(g, o);
        CHECK(is_valid_cut(g, r.cut));
        CHECK(r.value == g.weight_of(r.cut.S));
        CHECK(r.value >= *opt);
        exact += r.value == *opt;
        ++total;
    }
    CHECK(double(exact) / total >= 0.95);
}

TEST_CASE("m32 strategy on sparse graphs") {
    int exact = 0, total = 0;
    for (int t = 0; t < 40; ++t) {
        int n = 8 + t % 12;
        auto in = generate_instance(n, 2 * n, 20, Family::Gnm, uint64_t(t));
        auto opt = oracle::global_min_cut(in.g);
        if (!opt) continue;
        SolveOptions o;
        o.strategy = Strategy::M32;
        o.seed = uint64_t(t);
        auto r = solve(in.g, o);
        CHECK(r.value >= *opt);
        exact += r.value == *opt;
        ++total;
    }
    CHECK(double(exact) / total >= 0.95);
}

TEST_CASE("replay determinism") {
    auto in = generate_instance(14, 30, 9, Family::StarMix, 4);
    SolveOptions o;
    o.seed = 99;
    auto a = solve(in.g, o), b = solve(in.g, o);
    CHECK(a.value == b.value);
    CHECK(a.cut.L == b.cut.L);
    CHECK(a.cut.S == b.cut.S);
    CHECK(a.algorithm == b.algorithm);
    REQUIRE(a.estimates.size() == b.estimates.size());
    for (size_t k = 0; k < a.estimates.size(); ++k) {
        CHECK(a.estimates[k].c == b.estimates[k].c);
        CHECK(a.estimates[k].x == b.estimates[k].x);
        CHECK(a.estimates[k].y == b.estimates[k].y);
    }
}

TEST_CASE("alg3 returns the exact cut of its pair") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; ++t) {
        int n = 6 + int(rng() % 9);
        auto g = make_weights_positive(oracle::random_graph(n, 0.4, 1, 20, rng));
        if (g.is_complete()) continue;
        auto opt = oracle::global_min_cut(g);
        auto r = alg3(g, uint64_t(t), 0);
        REQUIRE_FALSE(g.has_edge(r.est.x, r.est.y));
        auto ref = oracle::st_cut(g, {r.est.x}, {r.est.y});
        if (r.est.fallback) {
            CHECK(r.est.c >= *ref);
        } else {
            CHECK(r.est.c == *ref);
        }
        CHECK(r.est.c >= *opt);
        for (const auto& run : r.runs) {
            if (run.report.sentinel) continue;
            auto Ts = r.terminals.Tx(g, run.x);
            CHECK(run.c >= *oracle::st_cut(g, {run.x}, Ts));
        }
    }
}

TEST_CASE("alg3 on P3 and empty terminal draws") {
    auto g = p3();
    for (uint64_t s = 0; s < 40; ++s) {
        auto r = alg3(g, s, 0);
        CHECK(r.est.c >= 3);
        bool good = std::find(r.terminals.T.begin(), r.terminals.T.end(), 0) != r.terminals.T.end() &&
                    std::find(r.terminals.T.begin(), r.terminals.T.end(), 2) != r.terminals.T.end();
        if (good) CHECK(r.est.c == 3);
        if (r.terminals.T.empty()) CHECK(r.est.fallback);
    }
}

TEST_CASE("bulk and immediate schedules agree") {
    for (int t = 0; t < 12; ++t) {
        auto in = generate_instance(10 + t % 6, 25, 20, Family::Gnm, uint64_t(t));
        auto g = make_weights_positive(in.g);
        for (int stress = 0; stress < 2; ++stress) {
            Alg3Config bulk, imm;
            bulk.sub.mode = imm.sub.mode = SubMode::Forced;
            if (stress) {
                for (auto* c : {&bulk, &imm}) {
                    c->sub.k = EstimatorConstants::desk();
                    c->sub.N_override = 4;
                    c->sub.oracle_tau_override = 3;
                    c->sub.sparse_tau_override = 3;
                }
            }
            imm.schedule = OracleSchedule::Immediate;
            auto a = alg3(g, uint64_t(t), 1, bulk), b = alg3(g, uint64_t(t), 1, imm);
            REQUIRE(a.runs.size() == b.runs.size());
            for (size_t k = 0; k < a.runs.size(); ++k) {
                CHECK(a.runs[k].c == b.runs[k].c);
                CHECK(a.runs[k].report.oracle_calls == b.runs[k].report.oracle_calls);
            }
            CHECK(a.est.c == b.est.c);
        }
    }
}

TEST_CASE("generator determinism and feasibility") {
    auto a = generate_instance(6, 7, 10, Family::Gnm, 1);
    auto b = generate_instance(6, 7, 10, Family::Gnm, 1);
    CHECK(a.g.adj == b.g.adj);
    CHECK(a.g.w == b.g.w);
    CHECK(a.g.m() == 7);
    CHECK_THROWS_AS(generate_instance(6, 15, 10, Family::Gnm, 1), InfeasibleError);
    CHECK_THROWS_AS(generate_instance(6, 2, 10, Family::Planted, 1), InfeasibleError);
    CHECK_THROWS_AS(parse_family("lattice"), ParseError);
    auto s = generate_instance(20, 40, 5, Family::StarMix, 3);
    CHECK(s.g.m() == 40);
}

TEST_CASE("planted cut is the optimum") {
    // S weight 5, every other vertex weighs at least 6
    for (uint64_t seed = 0; seed < 20; ++seed) {
        PlantSpec ps{2, 3, 5};
        auto in = generate_instance(12, 40, 1, Family::Planted, seed, ps);
        REQUIRE(in.plant);
        auto g = in.g;
        for (int v = 0; v < g.n; ++v)
            if (std::find(in.plant->S.begin(), in.plant->S.end(), v) == in.plant->S.end()) g.w[v] = 6;
        CHECK(is_valid_cut(g, *in.plant));
        CHECK(in.plant->value == 5);
        CHECK(oracle::global_min_cut(g) == 5);
    }
}

TEST_CASE("planted generator on random sizes") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        auto in = generate_instance(14, 50, 15, Family::Planted, seed);
        REQUIRE(in.plant);
        CHECK(is_valid_cut(in.g, *in.plant));
        CHECK(oracle::global_min_cut(in.g) == in.plant->value);
    }
}

TEST_CASE("bench writes one row per instance and trial") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "vcut_bench_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (int k = 0; k < 3; ++k) {
        std::ofstream out(dir / ("g" + std::to_string(k) + ".txt"));
        write_graph(out, generate_instance(8 + k, 12, 9, Family::Gnm, uint64_t(k)).g);
    }
    auto rows = bench(dir.string(), 2, 5);
    CHECK(rows.size() == 6);
    for (const auto& r : rows) {
        CHECK(r.opt.has_value());
        CHECK(r.match);
    }
    auto csv = dir / "out.csv";
    write_bench_csv(csv.string(), rows);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "instance,n,m,strategy,seed,value,opt,match,wall_ms");
    fs::remove_all(dir);
}

TEST_CASE("oracle statistics stay below one percent") {
    for (const auto& e : oracle_stats(300, 3)) {
        CHECK(e.trials == 300);
        CHECK(e.rate() <= 0.01);
    }
}
