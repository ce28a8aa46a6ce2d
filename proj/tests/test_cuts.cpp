#include "doctest.h"
#include "oracle.hpp"
#include "vcut/cuts.hpp"
#include "vcut/flow.hpp"

using namespace vcut;

namespace {
WeightedGraph p3() { return WeightedGraph::from_edges(3, {5, 3, 7}, {{0, 1}, {1, 2}}); }
}  // namespace

TEST_CASE("recover the P3 cut from a split-graph side") {
    auto g = p3();
    auto s = make_split_graph(g, 64, 0, nullptr);
    std::vector<char> side(s.num_nodes(), 0);
    side[SplitGraph::out(0)] = side[SplitGraph::in(0)] = side[SplitGraph::in(1)] = 1;
    auto c = recover_vertex_cut(g, s, side, 0);
    CHECK(c.X == std::vector<int>{0});
    CHECK(c.Y == std::vector<int>{1});
    CHECK(c.Z == std::vector<int>{2});
    CHECK(c.value == 3);
}

TEST_CASE("four cycle needs both middle vertices") {
    auto g = WeightedGraph::from_edges(4, {1, 2, 3, 4}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto c = min_st_vertex_cut(g, {0}, {2});
    REQUIRE(c);
    CHECK(c->Y == std::vector<int>{1, 3});
    CHECK(c->value == 6);
}

TEST_CASE("P3 s-t cuts") {
    auto g = p3();
    auto c = min_st_vertex_cut(g, {0}, {2});
    REQUIRE(c);
    CHECK(c->value == 3);
    CHECK(c->Y == std::vector<int>{1});
    CHECK_FALSE(min_st_vertex_cut(g, {0}, {1}).has_value());
}

TEST_CASE("s-t vertex cuts match brute force on random sets") {
    std::mt19937_64 rng(31);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        int n = 4 + int(rng() % 9);
        auto g = oracle::random_graph(n, 0.35, 0, 12, rng);
        std::vector<int> A, B;
        for (int v = 0; v < n; ++v) {
            int r = int(rng() % 5);
            if (r == 0) A.push_back(v);
            if (r == 1) B.push_back(v);
        }
        if (A.empty() || B.empty()) continue;
        auto ref = oracle::st_cut(g, A, B);
        auto got = min_st_vertex_cut(g, A, B);
        REQUIRE(ref.has_value() == got.has_value());
        if (!ref) continue;
        ++checked;
        CHECK(got->value == *ref);
        CHECK(g.weight_of(got->Y) == got->value);
        // no X-Z edge and the parts partition V
        CHECK(got->X.size() + got->Y.size() + got->Z.size() == size_t(n));
        for (int x : got->X)
            for (int z : got->Z) CHECK_FALSE(g.has_edge(x, z));
    }
    CHECK(checked > 40);
}

TEST_CASE("brute force reference cases") {
    auto k3 = WeightedGraph::from_edges(3, {1, 2, 3}, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(brute_force_global_min_cut(k3).complete);

    auto star = WeightedGraph::from_edges(4, {2, 1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}});
    auto s = brute_force_global_min_cut(star);
    CHECK(s.cut.value == 2);
    CHECK(s.cut.S == std::vector<int>{0});

    auto b = brute_force_global_min_cut(p3());
    CHECK(b.cut.value == 3);
    CHECK(b.cut.L == std::vector<int>{0});
    CHECK(b.cut.S == std::vector<int>{1});
    CHECK(b.cut.R == std::vector<int>{2});

    auto big = WeightedGraph(30);
    CHECK_THROWS_AS(brute_force_global_min_cut(big), SizeLimitError);
}

TEST_CASE("brute force agrees with subset enumeration") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 150; ++t) {
        int n = 3 + int(rng() % 10);
        auto g = oracle::random_graph(n, 0.2 + 0.2 * (t % 4), 0, 15, rng);
        auto ref = oracle::global_min_cut(g);
        auto got = brute_force_global_min_cut(g);
        REQUIRE(got.complete == !ref.has_value());
        if (!ref) continue;
        CHECK(got.cut.value == *ref);
        CHECK(is_valid_cut(g, got.cut));
    }
}

TEST_CASE("cut validity predicate") {
    auto g = p3();
    CHECK(is_valid_cut(g, VertexCut{{0}, {1}, {2}, 3}));
    CHECK_FALSE(is_valid_cut(g, VertexCut{{0}, {}, {1, 2}, 0}));    // L-R edge
    CHECK_FALSE(is_valid_cut(g, VertexCut{{0}, {1}, {2}, 4}));      // wrong value
    CHECK_FALSE(is_valid_cut(g, VertexCut{{}, {1}, {0, 2}, 3}));    // empty side
    CHECK_FALSE(is_valid_cut(g, VertexCut{{0}, {1}, {1, 2}, 3}));   // overlap
    auto c = canonical(g, VertexCut{{2}, {1}, {0}, 3});
    CHECK(c.L == std::vector<int>{0});
}

TEST_CASE("to_vertex_cut keeps the partition") {
    auto g = WeightedGraph::from_edges(5, {1, 1, 1, 1, 1}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    auto st = min_st_vertex_cut(g, {0}, {4});
    REQUIRE(st);
    auto c = to_vertex_cut(g, *st);
    CHECK(is_valid_cut(g, c));
    CHECK(c.value == 1);
}
