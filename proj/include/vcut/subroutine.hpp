#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vcut/cuts.hpp"
#include "vcut/estimators.hpp"
#include "vcut/graph.hpp"

namespace vcut {

enum class SubMode { Desk, Forced };

// Answers the k-th oracle query of one run (k counts from 0).
using OracleHandle = std::function<OracleResponse(const std::vector<int>& Z, int call)>;

// Thrown by a replaying oracle handle when the answer to a query is not known yet.
struct QueryPending {
    std::vector<int> Z;
    int call = 0;
};

// Oracle whose randomness comes from substream(seed, {TAG_ORACLE, terminal, call}),
// the same keys subgraph_oracle_bulk uses.
OracleHandle immediate_oracle(const WeightedGraph& g, double delta, uint64_t seed, int terminal,
                              OracleMode mode, const EstimatorConstants& k = EstimatorConstants::paper());

struct SubroutineConfig {
    SubMode mode = SubMode::Desk;
    double epsilon = 1.0 / 45;
    EstimatorConstants k = EstimatorConstants::paper();
    // measured constants of the size checks
    double support_const = 64;   // |support(f_i)| <= c * i * n^(2-4eps) * log^4 W_max
    double sparse_const = 4096;  // |E(H')| <= c * n^(2-4eps) * log n * log^3 W_max
    double explore_const = 64;   // |E(J)| <= c * n * N
    // Threshold overrides for stress tests; values <= 0 keep the derived ones.
    double N_override = 0;
    double oracle_tau_override = 0;
    double sparse_tau_override = 0;
    // stress knob: skip preprocessing and start the phases from the zero flow (the flow-value
    // invariant is then not checked)
    bool zero_start = false;
    // compute OPT_s exactly so the flow-value invariant can be asserted
    bool compute_opt = true;
};

// Known optimum for audits. The shortcut audit is meaningful when (s, T) is good for it.
struct Instrumentation {
    VertexCut cut;
};

struct PhaseRecord {
    int phase = 0;
    int step1_iterations = 0;
    int step1_reached = 0;     // iterations that reached a vertex joined to t
    int step1_saturated = 0;   // iterations that picked a random out-copy
    std::size_t J_edges = 0;   // largest explored subgraph
    std::size_t U = 0, U_h = 0, U_l = 0;  // U_h / U_l are materialised only for reporting
    std::size_t Q = 0, Q_prime = 0;
    std::size_t Q0p = 0, Q1p = 0, Q2p = 0, Q3p = 0;
    int step2_iterations = 0;
    bool final_cut = false;
    bool t1_source = true;  // meaningful when final_cut is set
    std::size_t H_prime_edges = 0;
    std::size_t support = 0;
    std::string value;  // val(f_i) in units
};

struct SubroutineReport {
    i64 c_s = 0;
    bool sentinel = false;      // T_s empty
    bool exact_fallback = false;
    bool failed = false;
    std::string fail_reason;
    int fail_phase = -1;
    int phases_run = 0;
    int oracle_calls = 0;
    int oracle_errors = 0;     // responses that contradict exact neighbour counts
    bool certified = true;     // final flow was maximum in G''; otherwise c_s is the G'' max flow
    std::vector<ShortcutEntry> ledger;
    std::vector<PhaseRecord> phases;
    std::optional<i64> opt_s;   // exact value when computed
    // invariant and size-check breaches; never silent
    std::vector<std::string> violations;
    // audits against the instrumentation cut (only when supplied)
    bool audited = false;
    bool good_pair = false;
    int invalid_shortcuts = 0;
    int crossing_checks = 0;
    int crossing_mismatches = 0;
};

// Minimum s - T_s vertex cut value upper bound, where T_s = T \ ({s} + N(s)).
// Desk mode takes the exact path whenever the size assumptions fail; forced mode always runs
// preprocessing, every phase and the finishing flow.
SubroutineReport main_subroutine(const WeightedGraph& g, const std::vector<int>& T, int s,
                                 const SubroutineConfig& cfg, const OracleHandle& oracle, uint64_t seed,
                                 const Instrumentation* ins = nullptr);

// Convenience overload with an immediate exact-mode oracle.
SubroutineReport main_subroutine(const WeightedGraph& g, const std::vector<int>& T, int s,
                                 const SubroutineConfig& cfg, uint64_t seed,
                                 const Instrumentation* ins = nullptr);

// Whether the size assumptions that allow the phase algorithm hold for these parameters.
bool size_assumptions_hold(const ParamBlock& p);

// Oracle degree parameter: the derived one, or the one whose threshold equals the override.
double effective_delta(const ParamBlock& p, const SubroutineConfig& cfg);

// Exact minimum s^out - t cut in the split graph with sinks at T_s (real units); nullopt when T_s is empty.
std::optional<i64> exact_opt_s(const WeightedGraph& g, const std::vector<int>& T, int s);

// v is in R, or the node is the out-copy of a vertex of S
bool shortcut_valid(const VertexCut& cut, int node);

}  // namespace vcut
