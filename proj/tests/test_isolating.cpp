#include "doctest.h"
#include "oracle.hpp"
#include "vcut/isolating.hpp"

using namespace vcut;

TEST_CASE("star leaves are isolated by the center") {
    auto g = WeightedGraph::from_edges(4, {4, 10, 10, 10}, {{0, 1}, {0, 2}, {0, 3}});
    auto r = isolating_cuts(g, {1, 2, 3});
    REQUIRE(r.terminals == std::vector<int>{1, 2, 3});
    for (size_t k = 0; k < 3; ++k) {
        CHECK(r.finite[k]);
        CHECK(r.value[k] == 4);
    }
}

TEST_CASE("path of four") {
    auto g = WeightedGraph::from_edges(4, {9, 1, 2, 9}, {{0, 1}, {1, 2}, {2, 3}});
    auto r = isolating_cuts(g, {0, 3});
    CHECK(r.value[r.index_of(0)] == 1);
    CHECK(r.value[r.index_of(3)] == 1);
}

TEST_CASE("adjacent terminals have no finite cut") {
    auto g = WeightedGraph::from_edges(3, {1, 1, 1}, {{0, 1}, {1, 2}});
    auto r = isolating_cuts(g, {0, 1, 2});
    CHECK_FALSE(r.finite[r.index_of(1)]);
}

TEST_CASE("per-terminal values match brute force") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 200; ++t) {
        int n = 3 + int(rng() % 12);
        auto g = oracle::random_graph(n, 0.15 + 0.1 * (t % 5), 1, 20, rng);
        std::vector<int> T;
        for (int v = 0; v < n; ++v)
            if (rng() % 3 == 0) T.push_back(v);
        if (T.size() < 2) T = {0, n - 1};
        auto r = isolating_cuts(g, T);
        for (size_t k = 0; k < r.terminals.size(); ++k) {
            int v = r.terminals[k];
            std::vector<int> others;
            for (int u : r.terminals)
                if (u != v) others.push_back(u);
            auto ref = oracle::st_cut(g, {v}, others);
            REQUIRE(bool(r.finite[k]) == ref.has_value());
            if (ref) CHECK(r.value[k] == *ref);
            // the component holds v and no other terminal
            const auto& comp = r.component[k];
            CHECK(std::find(comp.begin(), comp.end(), v) != comp.end());
            for (int u : others) CHECK(std::find(comp.begin(), comp.end(), u) == comp.end());
        }
    }
}
