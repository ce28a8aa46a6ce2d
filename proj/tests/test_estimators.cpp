#include <cmath>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "vcut/estimators.hpp"

using namespace vcut;

namespace {

const EstimatorConstants desk = EstimatorConstants::desk();

std::vector<int> range(int a, int b) {
    std::vector<int> v;
    for (int x = a; x < b; ++x) v.push_back(x);
    return v;
}

WeightedGraph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> E;
    for (int x = 0; x < a; ++x)
        for (int y = 0; y < b; ++y) E.push_back({x, a + y});
    return WeightedGraph::from_edges(a + b, std::vector<i64>(a + b, 1), E);
}

int count_into(const WeightedGraph& g, int v, const std::vector<char>& in) {
    int c = 0;
    for (int u : g.adj[v]) c += in[u];
    return c;
}

std::vector<char> member(int n, const std::vector<int>& vs) {
    std::vector<char> m(n, 0);
    for (int v : vs) m[v] = 1;
    return m;
}

}  // namespace

TEST_CASE("degree estimation with an empty pool") {
    auto g = complete_bipartite(3, 3);
    std::mt19937_64 rng(1);
    CHECK(degree_estimation(g, {}, range(0, 6), 1, rng, desk).empty());
    CHECK(degree_estimation(g, {}, range(0, 6), 1, rng).empty());
}

TEST_CASE("degree estimation finds every vertex of a complete bipartite side") {
    auto g = complete_bipartite(20, 20);
    int hits = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        std::mt19937_64 rng(s);
        auto A = degree_estimation(g, range(0, 20), range(20, 40), 1, rng, desk);
        hits += A == range(20, 40);
    }
    CHECK(hits >= 99);
}

TEST_CASE("degree estimation soundness and completeness on random graphs") {
    std::mt19937_64 gen(2);
    int trials = 0, errors = 0;
    for (int t = 0; t < 400; ++t) {
        int n = 60 + int(gen() % 100);
        auto g = oracle::random_graph(n, 0.2 + 0.6 * double(gen() % 100) / 100, 1, 1, gen);
        std::vector<int> Z, Zp;
        for (int v = 0; v < n; ++v) (gen() % 2 ? Z : Zp).push_back(v);
        double tau = 1 + double(gen() % 6);
        std::mt19937_64 rng(t);
        auto A = degree_estimation(g, Z, Zp, tau, rng, desk);
        auto inZ = member(n, Z), inA = member(n, A);
        bool err = false;
        for (int v : A) CHECK(std::find(Zp.begin(), Zp.end(), v) != Zp.end());
        for (int v : Zp) {
            int c = count_into(g, v, inZ);
            if ((inA[v] && c < tau) || (!inA[v] && c >= desk.err * tau)) err = true;
        }
        ++trials;
        errors += err;
    }
    CHECK(double(errors) / trials <= 0.01);
}

TEST_CASE("directed estimation ignores arcs below the capacity threshold") {
    std::vector<std::vector<std::pair<int, Cap>>> out(6);
    for (int u = 0; u < 3; ++u)
        for (int v = 3; v < 6; ++v) out[u].push_back({v, 2});
    auto view = view_of(out);
    std::mt19937_64 rng(3);
    CHECK(directed_heavy_degree_estimation(view, range(0, 3), range(3, 6), 1, 5, 64, rng, desk).empty());
}

TEST_CASE("directed estimation finds vertices with many heavy out-arcs") {
    int n = 40;
    std::vector<std::vector<std::pair<int, Cap>>> out(n);
    for (int u = 0; u < 20; ++u)
        for (int v = 20; v < 40; ++v) out[u].push_back({v, 8});
    auto view = view_of(out);
    int hits = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        std::mt19937_64 rng(s);
        auto A = directed_heavy_degree_estimation(view, range(0, 20), range(20, 40), 1, 4, 64, rng, desk);
        std::sort(A.begin(), A.end());
        hits += A == range(0, 20);
    }
    CHECK(hits >= 99);
}

TEST_CASE("heavy vertex without qualifying arcs") {
    std::vector<std::vector<std::pair<int, Cap>>> out(8);
    for (int u = 0; u < 4; ++u) out[u].push_back({4 + u, 1});
    auto view = view_of(out);
    for (uint64_t s = 0; s < 20; ++s) {
        std::mt19937_64 rng(s);
        CHECK_FALSE(heavy_vertex(view, range(0, 4), range(4, 8), 1, 2, 64, rng, desk).found);
    }
}

TEST_CASE("heavy vertex witnesses are always valid") {
    std::mt19937_64 gen(6);
    for (int t = 0; t < 200; ++t) {
        int n = 30;
        std::vector<std::vector<std::pair<int, Cap>>> out(n);
        for (int u = 0; u < 15; ++u)
            for (int v = 15; v < n; ++v)
                if (gen() % 3 == 0) out[u].push_back({v, Cap(1 + gen() % 6)});
        auto view = view_of(out);
        i64 tau = 1 + i64(gen() % 3);
        Cap c = Cap(1 + gen() % 4);
        std::mt19937_64 rng(t);
        auto h = heavy_vertex(view, range(0, 15), range(15, n), tau, c, 64, rng, desk);
        if (!h.found) continue;
        CHECK(h.v >= 15);
        std::set<int> d(h.sources.begin(), h.sources.end());
        CHECK(i64(d.size()) == tau);
        for (int u : h.sources) {
            bool ok = false;
            for (auto [v, cap] : out[u]) ok |= v == h.v && cap >= c;
            CHECK(ok);
        }
    }
}

TEST_CASE("heavy vertex finds a vertex with very many qualifying in-arcs") {
    int z = 2000;
    std::vector<std::vector<std::pair<int, Cap>>> out(z + 3);
    for (int u = 0; u < z; ++u) out[u].push_back({z, 5});
    out[0].push_back({z + 1, 5});
    auto view = view_of(out);
    int hits = 0;
    for (uint64_t s = 0; s < 100; ++s) {
        std::mt19937_64 rng(s);
        auto h = heavy_vertex(view, range(0, z), range(z, z + 3), 1, 5, 64, rng, desk);
        hits += h.found && h.v == z;
    }
    CHECK(hits >= 99);
}

TEST_CASE("oracle on an empty query") {
    std::mt19937_64 gen(1);
    auto g = oracle::random_graph(30, 0.3, 1, 5, gen);
    std::mt19937_64 rng(2);
    auto r = subgraph_oracle(g, {}, 0.5, rng, OracleMode::Exact);
    CHECK(r.Yh.empty());
    CHECK(r.E.empty());
}

TEST_CASE("oracle edge lists are exact in both modes") {
    std::mt19937_64 gen(5);
    int errors = 0, trials = 0;
    for (int t = 0; t < 100; ++t) {
        int n = 80;
        auto g = oracle::random_graph(n, 0.1 + 0.5 * double(t % 10) / 10, 1, 5, gen);
        std::vector<int> Z;
        for (int v = 0; v < n; ++v)
            if (gen() % 2) Z.push_back(v);
        double delta = 1 - std::log(3 * 1000 * lg(n)) / std::log(double(n));
        for (auto mode : {OracleMode::Exact, OracleMode::Compliant}) {
            std::mt19937_64 rng(t);
            auto r = subgraph_oracle(g, Z, delta, rng, mode, desk);
            CHECK(r.E == oracle_edges(g, Z, r.Yl));
            std::vector<int> all(r.Yh);
            all.insert(all.end(), r.Yl.begin(), r.Yl.end());
            std::sort(all.begin(), all.end());
            CHECK(all == range(0, n));
            if (mode == OracleMode::Compliant) {
                ++trials;
                errors += oracle_errs(g, Z, r, delta);
            } else {
                CHECK_FALSE(oracle_errs(g, Z, r, delta));
            }
        }
    }
    CHECK(double(errors) / trials <= 0.01);
}

TEST_CASE("bulk oracle answers equal per-query answers") {
    std::mt19937_64 gen(9);
    for (int t = 0; t < 40; ++t) {
        int n = 50;
        auto g = oracle::random_graph(n, 0.3, 1, 5, gen);
        std::vector<std::vector<int>> qs(1 + gen() % 5);
        std::vector<std::pair<uint64_t, uint64_t>> keys;
        for (size_t q = 0; q < qs.size(); ++q) {
            for (int v = 0; v < n; ++v)
                if (gen() % 3 == 0) qs[q].push_back(v);
            keys.push_back({q + 7, uint64_t(t)});
        }
        double delta = 1 - std::log(4 * 1000 * lg(n)) / std::log(double(n));
        for (auto mode : {OracleMode::Exact, OracleMode::Compliant}) {
            auto bulk = subgraph_oracle_bulk(g, qs, delta, 42, keys, mode, desk);
            REQUIRE(bulk.size() == qs.size());
            for (size_t q = 0; q < qs.size(); ++q) {
                auto rng = substream(42, {TAG_ORACLE, keys[q].first, keys[q].second});
                auto one = subgraph_oracle(g, qs[q], delta, rng, mode, desk);
                CHECK(bulk[q].Yh == one.Yh);
                CHECK(bulk[q].E == one.E);
                CHECK(bulk[q].E == oracle_edges(g, qs[q], bulk[q].Yl));
            }
        }
    }
}

TEST_CASE("bulk oracle on disjoint components") {
    // two triangles plus a pendant vertex each
    auto g = WeightedGraph::from_edges(8, std::vector<i64>(8, 1),
                                       {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {4, 5}, {5, 6}, {4, 6}, {6, 7}});
    std::vector<std::vector<int>> qs{{0, 1}, {4, 5}};
    std::vector<std::pair<uint64_t, uint64_t>> keys{{0, 0}, {1, 0}};
    auto bulk = subgraph_oracle_bulk(g, qs, 0.9, 1, keys, OracleMode::Exact);
    for (size_t q = 0; q < 2; ++q) CHECK(bulk[q].E == oracle_edges(g, qs[q], bulk[q].Yl));
    for (auto [z, y] : bulk[0].E) CHECK((z < 4 && y < 4));
    for (auto [z, y] : bulk[1].E) CHECK((z >= 4 && y >= 4));
}

TEST_CASE("bulk oracle rejects more than n queries") {
    auto g = WeightedGraph::from_edges(3, {1, 1, 1}, {{0, 1}});
    std::vector<std::vector<int>> qs(4, std::vector<int>{0});
    std::vector<std::pair<uint64_t, uint64_t>> keys(4, {0, 0});
    CHECK_THROWS(subgraph_oracle_bulk(g, qs, 0.5, 1, keys, OracleMode::Exact));
}
