#ifndef SKELPLAN_BENCH_HPP
#define SKELPLAN_BENCH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skelplan/json_io.hpp"
#include "skelplan/planners.hpp"

namespace skelplan {

struct ExperimentSpec {
    std::string name;
    std::string scene_path;     // either a scene (+ optional skeleton) ...
    std::string skeleton_path;
    std::string blockgrid_path; // ... or a block grid composed on load
    std::vector<std::string> planners;
    std::vector<std::uint64_t> seeds;
    double cap_s = 60.0;
    PlannerConfig config; // zero-valued fields are derived per scene
    std::string output_dir = "out";
};

struct ExperimentBundle {
    ExperimentSpec spec;
    Environment env;
    std::optional<WorkspaceSkeleton> skeleton; // annotated
};

// Reads an experiment/1 file; relative paths resolve against the file's
// directory. Seeds must be non-empty and duplicate-free.
ExperimentBundle load_experiment(const std::string& path);

struct BenchRow {
    std::string planner;
    std::uint64_t seed = 0;
    std::optional<double> d; // perturbation studies only
    RunRecord record;
};

// Per-run rng seed: splitmix-derived from (seed, planner, d).
std::uint64_t derive_run_seed(std::uint64_t seed, const std::string& planner, double d);
std::uint64_t derive_perturb_seed(std::uint64_t seed, double d);

// One planner run with the harness seed derivation applied.
PlanResult run_single(const Environment& env, const WorkspaceSkeleton* skel,
                      const std::string& planner, std::uint64_t seed, PlannerConfig cfg);

// Full planner x seed matrix, rows ordered by (planner, seed). Runs execute
// on an OpenMP worker pool unless `parallel` is false; either path yields
// identical records apart from wall times.
std::vector<BenchRow> run_bench_matrix(const ExperimentBundle& bundle, bool parallel);

// HAS-RRT over every (d, seed) pair with a freshly perturbed skeleton per
// pair. region_radius_override <= 0 keeps the experiment's value.
std::vector<BenchRow> run_perturbation(const ExperimentBundle& bundle,
                                       const std::vector<double>& d_list,
                                       double region_radius_override, bool parallel);

// planner,seed,d,success,time_s,vertices,cd_calls,path_cost,env_region_frac
std::string rows_to_csv(const std::vector<BenchRow>& rows);

struct Stats {
    int count = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double median = 0.0;
};
Stats compute_stats(std::vector<double> values);

struct PlannerSummary {
    int runs = 0;
    int successes = 0;
    double success_rate = 0.0;
    Stats vertices;
    Stats cd_calls;
    Stats time_s;
    Stats path_cost; // successful runs only
};

std::map<std::string, PlannerSummary> summarize(const std::vector<BenchRow>& rows);
std::string summary_to_json(const std::map<std::string, PlannerSummary>& summary);

} // namespace skelplan

#endif
