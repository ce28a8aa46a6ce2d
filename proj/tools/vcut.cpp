#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vcut/driver.hpp"

using namespace vcut;
using nlohmann::json;

namespace {

enum Exit { OK = 0, USAGE = 1, PARSE = 2, COMPLETE = 3, MISMATCH = 4 };

std::vector<int> one_based(const std::vector<int>& vs) {
    std::vector<int> out;
    for (int v : vs) out.push_back(v + 1);
    return out;
}

std::string join(const std::vector<int>& vs) {
    std::string s;
    for (size_t k = 0; k < vs.size(); ++k) s += (k ? " " : "") + std::to_string(vs[k]);
    return s;
}

int run_solve(const std::string& input, const std::string& strategy, uint64_t seed, const std::string& mode,
              bool do_verify, int reps, int brute_limit, bool as_json) {
    WeightedGraph g = load_graph(input);
    SolveOptions o;
    o.strategy = strategy == "m32" ? Strategy::M32 : Strategy::Auto;
    o.seed = seed;
    o.mode = mode == "forced" ? SubMode::Forced : SubMode::Desk;
    o.verify = do_verify;
    o.max_alg3_reps = reps;
    o.brute_limit = brute_limit;
    SolveReport r = solve(g, o);
    std::string verdict = r.verdict ? to_string(r.verdict->kind) : "unknown";
    if (as_json) {
        json j;
        j["value"] = r.value;
        j["L"] = one_based(r.cut.L);
        j["S"] = one_based(r.cut.S);
        j["R"] = one_based(r.cut.R);
        j["algorithm"] = r.algorithm;
        j["seed"] = r.seed;
        j["verified"] = verdict;
        if (r.verdict && r.verdict->kind == VerdictKind::Suboptimal) j["gap"] = r.verdict->gap;
        json t = json::object();
        for (const auto& s : r.timings) t[s.stage] = s.ms;
        j["timings_ms"] = t;
        std::cout << j.dump() << '\n';
    } else {
        std::printf("%-10s %lld\n", "value", r.value);
        std::printf("%-10s %s\n", "S", join(one_based(r.cut.S)).c_str());
        std::printf("%-10s %s\n", "L", join(one_based(r.cut.L)).c_str());
        std::printf("%-10s %s\n", "R", join(one_based(r.cut.R)).c_str());
        std::printf("%-10s %s\n", "algorithm", r.algorithm.c_str());
        std::printf("%-10s %llu\n", "seed", (unsigned long long)r.seed);
        std::printf("%-10s %s\n", "verified", verdict.c_str());
        for (const auto& s : r.timings) std::printf("%-10s %.3f ms\n", s.stage.c_str(), s.ms);
    }
    if (r.verdict && (r.verdict->kind == VerdictKind::Suboptimal || r.verdict->kind == VerdictKind::Invalid))
        return MISMATCH;
    return OK;
}

int run_gen(const std::string& family, int n, int m, i64 wmax, uint64_t seed, const std::string& out_path,
            const PlantSpec& plant) {
    Instance inst = generate_instance(n, m, wmax, parse_family(family), seed, plant);
    if (out_path.empty() || out_path == "-") {
        write_graph(std::cout, inst.g);
    } else {
        std::ofstream out(out_path);
        if (!out) throw ParseError("cannot write " + out_path);
        write_graph(out, inst.g);
    }
    if (inst.plant)
        std::cerr << "planted S: " << join(one_based(inst.plant->S)) << " (weight " << inst.plant->value << ")\n";
    return OK;
}

int run_bench(const std::string& suite, int trials, uint64_t seed, const std::string& report,
              const std::string& strategy, int brute_limit) {
    auto rows = bench(suite, trials, seed, strategy == "m32" ? Strategy::M32 : Strategy::Auto, brute_limit);
    write_bench_csv(report, rows);
    int known = 0, match = 0;
    for (const auto& r : rows) {
        known += r.opt.has_value();
        match += r.match;
    }
    std::printf("%zu runs, %d with known optimum, %d matched\n", rows.size(), known, match);
    return OK;
}

int run_oracle_stats(int trials, uint64_t seed) {
    for (const auto& e : oracle_stats(trials, seed))
        std::printf("%-34s %6d trials %5d errors  rate %.4f\n", e.name.c_str(), e.trials, e.errors, e.rate());
    return OK;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"global minimum vertex cut solver"};
    app.require_subcommand(1);

    std::string input, strategy = "auto", mode = "desk";
    uint64_t seed = 1;
    bool do_verify = false, as_json = false;
    int reps = 64, brute_limit = 24;
    auto* solve_cmd = app.add_subcommand("solve", "compute a minimum vertex cut");
    solve_cmd->add_option("--input", input, "graph file")->required();
    solve_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"auto", "m32"}));
    solve_cmd->add_option("--seed", seed);
    solve_cmd->add_option("--mode", mode)->check(CLI::IsMember({"desk", "forced"}));
    solve_cmd->add_flag("--verify", do_verify, "compare against brute force");
    solve_cmd->add_option("--max-alg3-reps", reps)->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--brute-limit", brute_limit);
    solve_cmd->add_flag("--json", as_json);

    std::string family, out_path;
    int n = 0, m = 0;
    i64 wmax = 1;
    PlantSpec plant;
    auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
    gen_cmd->add_option("--family", family)->required()->check(
        CLI::IsMember({"gnm", "planted", "planted_cut", "starmix", "star_mix"}));
    gen_cmd->add_option("--n", n)->required();
    gen_cmd->add_option("--m", m)->required();
    gen_cmd->add_option("--wmax", wmax);
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_option("--out", out_path);
    gen_cmd->add_option("--plant-l", plant.L);
    gen_cmd->add_option("--plant-s", plant.S);
    gen_cmd->add_option("--plant-weight", plant.S_weight);

    std::string suite, report = "bench.csv";
    int trials = 1;
    auto* bench_cmd = app.add_subcommand("bench", "run a directory of instances");
    bench_cmd->add_option("--suite", suite)->required();
    bench_cmd->add_option("--trials", trials);
    bench_cmd->add_option("--seed", seed);
    bench_cmd->add_option("--report", report);
    bench_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"auto", "m32"}));
    bench_cmd->add_option("--brute-limit", brute_limit);

    int stat_trials = 10000;
    auto* stats_cmd = app.add_subcommand("oracle-stats", "empirical estimator error rates");
    stats_cmd->add_option("--trials", stat_trials);
    stats_cmd->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? OK : USAGE;
    }

    try {
        if (*solve_cmd) return run_solve(input, strategy, seed, mode, do_verify, reps, brute_limit, as_json);
        if (*gen_cmd) return run_gen(family, n, m, wmax, seed, out_path, plant);
        if (*bench_cmd) return run_bench(suite, trials, seed, report, strategy, brute_limit);
        if (*stats_cmd) return run_oracle_stats(stat_trials, seed);
    } catch (const CompleteGraphError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return COMPLETE;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return USAGE;
    } catch (const SizeLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return PARSE;
    }
    return USAGE;
}
