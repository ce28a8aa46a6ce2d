#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcut/cuts.hpp"
#include "vcut/estimators.hpp"
#include "vcut/graph.hpp"
#include "vcut/sampling.hpp"
#include "vcut/subroutine.hpp"

namespace vcut {

enum class OracleSchedule { Immediate, Bulk };

struct Alg3Config {
    SubroutineConfig sub;  // sub.mode selects desk or forced
    // Forced mode normally answers all i-th queries together; Immediate answers each query on the spot.
    OracleSchedule schedule = OracleSchedule::Bulk;
    const Instrumentation* ins = nullptr;
};

struct TerminalRun {
    int x = -1;
    i64 c = 0;
    SubroutineReport report;
};

struct Alg3Result {
    CutEstimate est;
    TerminalSet terminals;
    std::vector<TerminalRun> runs;
    int bulk_rounds = 0;
};

// One repetition: terminal draw, one main-subroutine run per terminal, exact x-y cut for the best one.
Alg3Result alg3(const WeightedGraph& g, uint64_t seed, uint64_t round, const Alg3Config& cfg = {});

// ceil(2^18 log W' log^4 n)
double alg3_repetitions(int n, i64 W_prime);

enum class Strategy { Auto, M32 };

struct SolveOptions {
    Strategy strategy = Strategy::Auto;
    uint64_t seed = 1;
    SubMode mode = SubMode::Desk;
    int max_alg3_reps = 64;
    bool verify = false;
    int brute_limit = 24;
};

enum class VerdictKind { Optimal, Suboptimal, Invalid, Unknown };

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    i64 gap = 0;
    std::optional<i64> opt;
};

std::string to_string(VerdictKind k);

struct StageTime {
    std::string stage;
    double ms = 0;
};

struct SolveReport {
    VertexCut cut;
    i64 value = 0;
    std::string algorithm;
    uint64_t seed = 0;
    SubMode mode = SubMode::Desk;
    std::vector<StageTime> timings;
    std::optional<Verdict> verdict;
    // every candidate estimate produced along the way, on the transformed weights
    std::vector<CutEstimate> estimates;
};

SolveReport solve(const WeightedGraph& g, const SolveOptions& opt = {});

// optimal / valid-but-suboptimal(gap) / invalid, against brute force
Verdict verify(const WeightedGraph& g, const VertexCut& cut, int brute_limit = 24);

enum class Family { Gnm, Planted, StarMix };

Family parse_family(const std::string& s);

struct PlantSpec {
    int L = 0;  // sizes; 0 picks a default
    int S = 0;
    i64 S_weight = 0;  // total weight of S; 0 draws weights uniformly
};

struct Instance {
    WeightedGraph g;
    std::optional<VertexCut> plant;
};

Instance generate_instance(int n, int m, i64 w_max, Family family, uint64_t seed, const PlantSpec& plant = {});

struct BenchRow {
    std::string instance;
    int n = 0, m = 0;
    std::string strategy;
    uint64_t seed = 0;
    i64 value = 0;
    std::optional<i64> opt;
    bool match = false;
    double wall_ms = 0;
};

std::vector<BenchRow> bench(const std::string& suite_dir, int trials, uint64_t seed, Strategy strategy = Strategy::Auto,
                            int brute_limit = 24);
void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows);

struct ErrorRate {
    std::string name;
    int trials = 0;
    int errors = 0;
    double rate() const { return trials ? double(errors) / trials : 0; }
};

// Empirical error-event frequencies of the sampling estimators against exact recounts,
// plus bulk-oracle edge-set mismatches.
std::vector<ErrorRate> oracle_stats(int trials, uint64_t seed);

}  // namespace vcut
