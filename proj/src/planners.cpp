#include "skelplan/planners.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace skelplan {

namespace {

PlannerConfig resolve_config(const Environment& env, const PlannerConfig& cfg) {
    PlannerConfig out = cfg;
    double side = env.geom.shortest_side();
    if (out.max_step <= 0.0) out.max_step = side / 10.0;
    if (out.region_max_radius <= 0.0) out.region_max_radius = side / 10.0;
    if (out.resolution <= 0.0) out.resolution = env.edge_resolution();
    if (out.goal_tolerance <= 0.0) out.goal_tolerance = env.query.goal_tolerance;
    return out;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct RunState {
    const Environment& env;
    PlannerConfig cfg;
    Rng rng;
    ValidityCounter counter;
    TreeRoadmap tree;
    Clock::time_point t0;
    long long iterations = 0;
    long long selections = 0;
    long long env_selections = 0;
    int goal_vertex = -1;

    RunState(const Environment& e, const PlannerConfig& c) : env(e), cfg(c), rng(c.seed) {}

    bool caps_hit() const {
        return iterations >= cfg.iteration_cap || seconds_since(t0) >= cfg.time_cap_s;
    }

    void check_endpoints() {
        if (!is_valid(env.query.start, env, counter) || !is_valid(env.query.goal, env, counter))
            throw std::invalid_argument("query start or goal configuration is invalid");
    }

    // Adds q_new only when the whole edge re-validates at the run resolution.
    int try_add(int near_id, const Configuration& q_new) {
        const Configuration& q_near = tree.configs[near_id];
        if (!validate_edge(q_near, q_new, env, cfg.resolution, counter)) return -1;
        return tree.add_child(near_id, q_new, distance(env, q_near, q_new));
    }

    bool try_goal_connect(int vid) {
        const Configuration& q = tree.configs[vid];
        const Configuration& goal = env.query.goal;
        double d = distance(env, q, goal);
        // Connection attempts are cheap validate_edge calls; allow them from
        // one extension step out, not just from inside the goal tolerance.
        if (d > std::max(cfg.goal_tolerance, cfg.max_step)) return false;
        if (d == 0.0) {
            goal_vertex = vid;
            return true;
        }
        if (!validate_edge(q, goal, env, cfg.resolution, counter)) return false;
        goal_vertex = tree.add_child(vid, goal, d);
        return true;
    }

    PlanResult finish(const std::string& name, bool region_planner) {
        PlanResult res;
        res.record.planner = name;
        res.record.seed = cfg.seed;
        res.record.success = goal_vertex >= 0;
        res.record.time_s = seconds_since(t0);
        res.record.vertices = tree.size();
        res.record.cd_calls = counter.cd_calls;
        if (goal_vertex >= 0) {
            res.path = extract_path(tree, goal_vertex);
            res.record.path_cost = path_cost(env, res.path);
        }
        if (region_planner)
            res.record.env_region_frac =
                selections > 0 ? double(env_selections) / double(selections) : 1.0;
        res.tree = std::move(tree);
        res.goal_vertex = goal_vertex;
        res.config = cfg;
        return res;
    }
};

void collect_traces(const RegionSet& regions, std::vector<RegionTrace>& out) {
    for (const SamplingRegion& r : regions.retired()) {
        out.push_back({r.id, r.edge, r.successes, r.failures, true});
    }
    for (const SamplingRegion& r : regions.live()) {
        out.push_back({r.id, r.edge, r.successes, r.failures, false});
    }
    std::sort(out.begin(), out.end(),
              [](const RegionTrace& a, const RegionTrace& b) { return a.region_id < b.region_id; });
}

PlanResult region_plan(const Environment& env, const WorkspaceSkeleton& skel,
                       const PlannerConfig& raw_cfg, AdvanceGranularity granularity,
                       bool use_retraction, const std::string& name) {
    RunState st(env, resolve_config(env, raw_cfg));
    st.check_endpoints();

    // Clearance annotation counts as skeleton construction and stays out of
    // the reported time; directing/pruning is part of the run.
    WorkspaceSkeleton annotated;
    const WorkspaceSkeleton* use = &skel;
    if (!skel.empty() && !skel.annotated()) {
        annotated = annotate_clearance_serial(skel, env.geom);
        use = &annotated;
    }

    st.t0 = Clock::now();

    std::optional<DirectedQuerySkeleton> dqs;
    if (!use->empty()) {
        try {
            dqs = direct_and_prune(*use, env.query.start.position, env.query.goal.position);
        } catch (const NoGuidanceError&) {
            dqs.reset(); // fall back to environment-only sampling
        }
    }

    RegionSet regions(dqs ? &*dqs : nullptr, st.cfg.region_max_radius, &env.geom,
                      env.robot.fit_radius());
    if (dqs) regions.spawn_at_vertex(dqs->source);

    st.tree.add_root(env.query.start);

    auto touches_any_region = [&](const Vec3& p) {
        for (const SamplingRegion& r : regions.live())
            if (skelplan::distance(p, r.center) <= r.radius) return true;
        return false;
    };

    // The tree must first grow to a sampling region; until then regions do
    // not advance, retract, or accumulate weight.
    bool reached_first_region =
        regions.empty() || touches_any_region(env.query.start.position);

    bool solved = st.try_goal_connect(0);

    while (!solved && !st.caps_hit()) {
        ++st.iterations;

        int sel = select_region(regions.live(), st.cfg.explore_bias, st.rng);
        ++st.selections;
        if (sel < 0) ++st.env_selections;

        Configuration q_rand;
        if (sel < 0) {
            q_rand = sample_uniform(env, st.rng);
        } else {
            const SamplingRegion& r = regions.live()[sel];
            q_rand = sample_in_ball(env, r.center, r.radius, st.rng);
        }

        int near_id = nearest_neighbor(env, st.tree, q_rand);
        std::optional<Configuration> ext =
            extend(st.tree.configs[near_id], q_rand, env, st.cfg.max_step, st.cfg.resolution,
                   st.counter);

        int added = -1;
        if (ext) added = st.try_add(near_id, *ext);

        if (reached_first_region && sel >= 0) {
            SamplingRegion& r = regions.live_at(sel);
            bool reached_region =
                added >= 0 && skelplan::distance(ext->position, r.center) <= r.radius;
            if (reached_region) {
                const DirectedEdge& edge = dqs->edges[r.edge];
                bool reached_end =
                    skelplan::distance(ext->position, edge.intermediates.back()) <= r.radius;
                ++r.successes;
                regions.advance(sel, granularity, reached_end);
            } else {
                if (use_retraction)
                    retract_region(r, ext ? ext->position : st.tree.configs[near_id].position);
                ++r.failures;
            }
        }

        if (added >= 0) {
            if (!reached_first_region && touches_any_region(ext->position))
                reached_first_region = true;
            solved = st.try_goal_connect(added);
        }
    }

    PlanResult res = st.finish(name, true);
    collect_traces(regions, res.regions);
    return res;
}

} // namespace

std::vector<Configuration> extract_path(const TreeRoadmap& tree, int goal_vertex) {
    if (goal_vertex < 0 || goal_vertex >= tree.size())
        throw std::invalid_argument("extract_path: vertex not in tree");
    std::vector<Configuration> path;
    for (int v = goal_vertex; v >= 0; v = tree.parent[v]) path.push_back(tree.configs[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

double path_cost(const Environment& env, const std::vector<Configuration>& path) {
    double c = 0.0;
    for (size_t i = 1; i < path.size(); ++i) c += distance(env, path[i - 1], path[i]);
    return c;
}

PlanResult rrt_plan(const Environment& env, const PlannerConfig& raw_cfg) {
    RunState st(env, resolve_config(env, raw_cfg));
    st.check_endpoints();
    st.t0 = Clock::now();
    st.tree.add_root(env.query.start);

    bool solved = st.try_goal_connect(0);
    while (!solved && !st.caps_hit()) {
        ++st.iterations;
        Configuration q_rand = sample_uniform(env, st.rng);
        int near_id = nearest_neighbor(env, st.tree, q_rand);
        std::optional<Configuration> ext =
            extend(st.tree.configs[near_id], q_rand, env, st.cfg.max_step, st.cfg.resolution,
                   st.counter);
        if (!ext) continue;
        int added = st.try_add(near_id, *ext);
        if (added >= 0) solved = st.try_goal_connect(added);
    }
    return st.finish("rrt", false);
}

PlanResult drrrt_plan(const Environment& env, const WorkspaceSkeleton& skel,
                      const PlannerConfig& cfg) {
    return region_plan(env, skel, cfg, AdvanceGranularity::OneIntermediate, false, "drrrt");
}

PlanResult hasrrt_plan(const Environment& env, const WorkspaceSkeleton& skel,
                       const PlannerConfig& cfg) {
    return region_plan(env, skel, cfg, AdvanceGranularity::EdgeEnd, true, "hasrrt");
}

PlanResult plan_with(const std::string& planner, const Environment& env,
                     const WorkspaceSkeleton* skel, const PlannerConfig& cfg) {
    if (planner == "rrt") return rrt_plan(env, cfg);
    if (planner == "drrrt" || planner == "hasrrt") {
        if (!skel)
            throw std::invalid_argument("planner '" + planner + "' requires a workspace skeleton");
        return planner == "drrrt" ? drrrt_plan(env, *skel, cfg) : hasrrt_plan(env, *skel, cfg);
    }
    throw std::invalid_argument("unknown planner '" + planner + "' (expected rrt, drrrt, hasrrt)");
}

} // namespace skelplan
