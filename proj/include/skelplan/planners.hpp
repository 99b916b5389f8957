#ifndef SKELPLAN_PLANNERS_HPP
#define SKELPLAN_PLANNERS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skelplan/cspace.hpp"
#include "skelplan/regions.hpp"
#include "skelplan/skeleton.hpp"

namespace skelplan {

struct PlannerConfig {
    double explore_bias = 0.1;
    double max_step = 0.0;          // 0 -> shortest boundary side / 10
    double region_max_radius = 0.0; // 0 -> shortest boundary side / 10
    double resolution = 0.0;        // 0 -> the scene's edge resolution
    double goal_tolerance = 0.0;    // 0 -> the query's tolerance
    long long iteration_cap = 200000;
    double time_cap_s = 60.0;
    std::uint64_t seed = 0;
};

struct RunRecord {
    std::string planner;
    std::uint64_t seed = 0;
    bool success = false;
    double time_s = 0.0;
    int vertices = 0;
    long long cd_calls = 0;
    std::optional<double> path_cost;
    std::optional<double> env_region_frac; // region planners only
};

// Per-region diagnostics for one run.
struct RegionTrace {
    int region_id = -1;
    int edge = -1;
    long long successes = 0;
    long long failures = 0;
    bool retired = false;
};

struct PlanResult {
    RunRecord record;
    TreeRoadmap tree;
    std::vector<Configuration> path; // empty on failure
    int goal_vertex = -1;
    PlannerConfig config;
    std::vector<RegionTrace> regions;
};

// Root-to-vertex configuration sequence via parent links.
std::vector<Configuration> extract_path(const TreeRoadmap& tree, int goal_vertex);
double path_cost(const Environment& env, const std::vector<Configuration>& path);

PlanResult rrt_plan(const Environment& env, const PlannerConfig& cfg);
PlanResult drrrt_plan(const Environment& env, const WorkspaceSkeleton& skel,
                      const PlannerConfig& cfg);
PlanResult hasrrt_plan(const Environment& env, const WorkspaceSkeleton& skel,
                       const PlannerConfig& cfg);

// Dispatch by name: "rrt", "drrrt", "hasrrt".
PlanResult plan_with(const std::string& planner, const Environment& env,
                     const WorkspaceSkeleton* skel, const PlannerConfig& cfg);

} // namespace skelplan

#endif
