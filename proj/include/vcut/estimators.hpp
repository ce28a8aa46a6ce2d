#pragma once

#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "vcut/graph.hpp"

namespace vcut {

// Constants of the sampling estimators. With log_factor <= 0 the factor is lg n * lg W.
struct EstimatorConstants {
    double log_factor = 0;
    double sample = 10;    // sampling probability sample * L / tau
    double keep = 100;     // a vertex is reported when its sampled count reaches keep * L
    double err = 1000;     // false negatives only count above err * tau * L
    double cutoff = 100;   // tau > |pool| / (cutoff * L) returns nothing
    double oversize = 100; // |T| > oversize * |pool| * L / tau returns nothing

    static EstimatorConstants paper() { return {}; }
    // small-scale profile: the sampling branch is reachable on graphs of a few dozen vertices
    static EstimatorConstants desk() { return {1, 4, 16, 40, 16, 16}; }

    double factor(int n, double W) const { return log_factor > 0 ? log_factor : lg(n) * lg(W); }
};

// Directed capacitated graph seen through callbacks, so residual networks need no copy.
struct DigraphView {
    using Visit = std::function<void(int, Cap)>;
    int n = 0;
    std::function<void(int, const Visit&)> out;  // (head, capacity) of arcs leaving u
    std::function<void(int, const Visit&)> in;   // (tail, capacity) of arcs entering v
};

DigraphView view_of(const std::vector<std::vector<std::pair<int, Cap>>>& out_lists);

// A subset of Z' whose members have at least tau neighbours in Z, containing every vertex
// of Z' with err * tau * L neighbours in Z (with high probability).
std::vector<int> degree_estimation(const WeightedGraph& g, const std::vector<int>& Z,
                                   const std::vector<int>& Zp, double tau, std::mt19937_64& rng,
                                   const EstimatorConstants& k = EstimatorConstants::paper());

// A subset of Z whose members have at least tau out-arcs of capacity >= c_star into Z'.
std::vector<int> directed_heavy_degree_estimation(const DigraphView& g, const std::vector<int>& Z,
                                                  const std::vector<int>& Zp, double tau, Cap c_star,
                                                  double W, std::mt19937_64& rng,
                                                  const EstimatorConstants& k = EstimatorConstants::paper());

struct HeavyWitness {
    bool found = false;
    int v = -1;
    std::vector<int> sources;  // tau distinct vertices of Z with an arc into v of capacity >= c_star
};

// Z and Z' must be disjoint.
HeavyWitness heavy_vertex(const DigraphView& g, const std::vector<int>& Z, const std::vector<int>& Zp,
                          i64 tau, Cap c_star, double W, std::mt19937_64& rng,
                          const EstimatorConstants& k = EstimatorConstants::paper());

enum class OracleMode { Compliant, Exact };

struct OracleResponse {
    std::vector<int> Yh, Yl;  // sorted partition of V
    // ordered pairs (z, y) with z in Z, y in Yl and {z, y} an edge; sorted
    std::vector<std::pair<int, int>> E;
    double tau = 0;
    bool precondition_ok = true;  // delta >= 1 / sqrt(log n)
};

double oracle_tau(int n, double delta);

OracleResponse subgraph_oracle(const WeightedGraph& g, const std::vector<int>& Z, double delta,
                               std::mt19937_64& rng, OracleMode mode,
                               const EstimatorConstants& k = EstimatorConstants::paper());

// Answers several queries at once by listing triangles of the tripartite incidence graph.
// Query q draws its randomness from substream(seed, {TAG_ORACLE, keys[q]...}).
std::vector<OracleResponse> subgraph_oracle_bulk(const WeightedGraph& g,
                                                 const std::vector<std::vector<int>>& queries,
                                                 double delta, uint64_t seed,
                                                 const std::vector<std::pair<uint64_t, uint64_t>>& keys,
                                                 OracleMode mode,
                                                 const EstimatorConstants& k = EstimatorConstants::paper());

// E_G(Y^l, Z) for a given partition, by direct scan
std::vector<std::pair<int, int>> oracle_edges(const WeightedGraph& g, const std::vector<int>& Z,
                                              const std::vector<int>& Yl);

// error test of a response against exact neighbour counts
bool oracle_errs(const WeightedGraph& g, const std::vector<int>& Z, const OracleResponse& r, double delta);

}  // namespace vcut
