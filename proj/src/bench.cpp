#include "skelplan/bench.hpp"

#include "skelplan/perturb.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace skelplan {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kPerturbTag = 0x70657274757262ULL; // "perturb"

std::uint64_t planner_tag(const std::string& planner) {
    if (planner == "rrt") return 1;
    if (planner == "drrrt") return 2;
    if (planner == "hasrrt") return 3;
    throw std::invalid_argument("unknown planner '" + planner + "'");
}

std::uint64_t f64_bits(double d) { return std::bit_cast<std::uint64_t>(d); }

} // namespace

std::uint64_t derive_run_seed(std::uint64_t seed, const std::string& planner, double d) {
    return mix_seed({seed, planner_tag(planner), f64_bits(d)});
}

std::uint64_t derive_perturb_seed(std::uint64_t seed, double d) {
    return mix_seed({seed, kPerturbTag, f64_bits(d)});
}

ExperimentBundle load_experiment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!j.contains("format") || j.at("format").get<std::string>() != "experiment/1")
        throw std::invalid_argument(path + ": expected format tag 'experiment/1'");

    ExperimentBundle bundle;
    ExperimentSpec& spec = bundle.spec;
    spec.name = j.value("name", std::string{});

    fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        fs::path fp(p);
        return fp.is_absolute() ? fp.string() : (base / fp).string();
    };

    if (j.contains("scene")) spec.scene_path = resolve(j.at("scene").get<std::string>());
    if (j.contains("skeleton")) spec.skeleton_path = resolve(j.at("skeleton").get<std::string>());
    if (j.contains("blockgrid")) spec.blockgrid_path = resolve(j.at("blockgrid").get<std::string>());
    if (spec.scene_path.empty() == spec.blockgrid_path.empty())
        throw std::invalid_argument(path + ": give exactly one of 'scene' or 'blockgrid'");

    for (const json& p : j.at("planners")) {
        std::string name = p.get<std::string>();
        planner_tag(name); // validates
        spec.planners.push_back(name);
    }
    if (spec.planners.empty()) throw std::invalid_argument(path + ": planner list is empty");

    std::set<std::uint64_t> seen;
    for (const json& s : j.at("seeds")) {
        std::uint64_t v = s.get<std::uint64_t>();
        if (!seen.insert(v).second)
            throw std::invalid_argument(path + ": duplicate seed " + std::to_string(v));
        spec.seeds.push_back(v);
    }
    if (spec.seeds.empty()) throw std::invalid_argument(path + ": seed list is empty");

    spec.cap_s = j.value("cap_s", 60.0);
    if (!(spec.cap_s > 0.0)) throw std::invalid_argument(path + ": cap_s must be > 0");
    spec.output_dir = j.contains("output_dir") ? resolve(j.at("output_dir").get<std::string>())
                                               : (base / "out").string();

    if (j.contains("config")) {
        const json& c = j.at("config");
        spec.config.explore_bias = c.value("explore_bias", spec.config.explore_bias);
        spec.config.max_step = c.value("max_step", 0.0);
        spec.config.region_max_radius = c.value("region_max_radius", 0.0);
        spec.config.resolution = c.value("resolution", 0.0);
        spec.config.goal_tolerance = c.value("goal_tolerance", 0.0);
        spec.config.iteration_cap = c.value("iteration_cap", spec.config.iteration_cap);
    }
    spec.config.time_cap_s = spec.cap_s;

    if (!spec.blockgrid_path.empty()) {
        ComposedEnvironment composed = compose_from_file(load_blockgrid(spec.blockgrid_path));
        bundle.env = std::move(composed.env);
        bundle.skeleton = std::move(composed.skeleton);
    } else {
        bundle.env = load_scene(spec.scene_path);
        if (!spec.skeleton_path.empty()) bundle.skeleton = load_skeleton(spec.skeleton_path);
    }
    if (bundle.skeleton && !bundle.skeleton->annotated())
        bundle.skeleton = annotate_clearance(*bundle.skeleton, bundle.env.geom);
    return bundle;
}

PlanResult run_single(const Environment& env, const WorkspaceSkeleton* skel,
                      const std::string& planner, std::uint64_t seed, PlannerConfig cfg) {
    cfg.seed = derive_run_seed(seed, planner, 0.0);
    PlanResult res = plan_with(planner, env, skel, cfg);
    res.record.seed = seed;
    return res;
}

std::vector<BenchRow> run_bench_matrix(const ExperimentBundle& bundle, bool parallel) {
    struct Task {
        std::string planner;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    std::vector<std::string> planners = bundle.spec.planners;
    std::sort(planners.begin(), planners.end());
    std::vector<std::uint64_t> seeds = bundle.spec.seeds;
    std::sort(seeds.begin(), seeds.end());
    for (const std::string& p : planners)
        for (std::uint64_t s : seeds) tasks.push_back({p, s});

    std::vector<BenchRow> rows(tasks.size());
    const WorkspaceSkeleton* skel = bundle.skeleton ? &*bundle.skeleton : nullptr;
    const long long n = static_cast<long long>(tasks.size());

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long i = 0; i < n; ++i) {
        const Task& t = tasks[i];
        PlanResult res = run_single(bundle.env, skel, t.planner, t.seed, bundle.spec.config);
        rows[i] = BenchRow{t.planner, t.seed, std::nullopt, res.record};
    }
    return rows;
}

std::vector<BenchRow> run_perturbation(const ExperimentBundle& bundle,
                                       const std::vector<double>& d_list,
                                       double region_radius_override, bool parallel) {
    if (!bundle.skeleton)
        throw std::invalid_argument("perturbation study requires a skeleton");
    struct Task {
        double d;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    std::vector<std::uint64_t> seeds = bundle.spec.seeds;
    std::sort(seeds.begin(), seeds.end());
    for (double d : d_list)
        for (std::uint64_t s : seeds) tasks.push_back({d, s});

    std::vector<BenchRow> rows(tasks.size());
    const long long n = static_cast<long long>(tasks.size());

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long i = 0; i < n; ++i) {
        const Task& t = tasks[i];
        PerturbationSpec pspec{t.d, derive_perturb_seed(t.seed, t.d)};
        WorkspaceSkeleton perturbed =
            perturb_skeleton(*bundle.skeleton, pspec, bundle.env.geom,
                             bundle.env.query.start.position, bundle.env.query.goal.position);
        if (!perturbed.annotated())
            perturbed = annotate_clearance_serial(perturbed, bundle.env.geom);

        PlannerConfig cfg = bundle.spec.config;
        if (region_radius_override > 0.0) cfg.region_max_radius = region_radius_override;
        cfg.seed = derive_run_seed(t.seed, "hasrrt", t.d);
        PlanResult res = hasrrt_plan(bundle.env, perturbed, cfg);
        res.record.seed = t.seed;
        rows[i] = BenchRow{"hasrrt", t.seed, t.d, res.record};
    }
    return rows;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace

std::string rows_to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "planner,seed,d,success,time_s,vertices,cd_calls,path_cost,env_region_frac\n";
    for (const BenchRow& r : rows) {
        out << r.planner << ',' << r.seed << ',';
        if (r.d) out << num(*r.d);
        out << ',' << (r.record.success ? 1 : 0) << ',' << num(r.record.time_s) << ','
            << r.record.vertices << ',' << r.record.cd_calls << ',';
        if (r.record.path_cost) out << num(*r.record.path_cost);
        out << ',';
        if (r.record.env_region_frac) out << num(*r.record.env_region_frac);
        out << '\n';
    }
    return out.str();
}

Stats compute_stats(std::vector<double> values) {
    Stats s;
    s.count = static_cast<int>(values.size());
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / values.size();
    double var = 0.0;
    for (double v : values) var += (v - s.mean) * (v - s.mean);
    s.stddev = values.size() > 1 ? std::sqrt(var / (values.size() - 1)) : 0.0;
    std::sort(values.begin(), values.end());
    size_t mid = values.size() / 2;
    s.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    return s;
}

std::map<std::string, PlannerSummary> summarize(const std::vector<BenchRow>& rows) {
    std::map<std::string, std::vector<const BenchRow*>> by_planner;
    for (const BenchRow& r : rows) by_planner[r.planner].push_back(&r);

    std::map<std::string, PlannerSummary> out;
    for (const auto& [planner, group] : by_planner) {
        PlannerSummary s;
        std::vector<double> verts, cds, times, costs;
        for (const BenchRow* r : group) {
            ++s.runs;
            if (r->record.success) ++s.successes;
            verts.push_back(r->record.vertices);
            cds.push_back(static_cast<double>(r->record.cd_calls));
            times.push_back(r->record.time_s);
            if (r->record.path_cost) costs.push_back(*r->record.path_cost);
        }
        s.success_rate = s.runs > 0 ? double(s.successes) / double(s.runs) : 0.0;
        s.vertices = compute_stats(std::move(verts));
        s.cd_calls = compute_stats(std::move(cds));
        s.time_s = compute_stats(std::move(times));
        s.path_cost = compute_stats(std::move(costs));
        out[planner] = s;
    }
    return out;
}

std::string summary_to_json(const std::map<std::string, PlannerSummary>& summary) {
    json j;
    j["format"] = "summary/1";
    json per;
    for (const auto& [planner, s] : summary) {
        auto stats = [](const Stats& st) {
            return json{{"count", st.count},
                        {"mean", st.mean},
                        {"std", st.stddev},
                        {"median", st.median}};
        };
        per[planner] = json{{"runs", s.runs},
                            {"successes", s.successes},
                            {"success_rate", s.success_rate},
                            {"vertices", stats(s.vertices)},
                            {"cd_calls", stats(s.cd_calls)},
                            {"time_s", stats(s.time_s)},
                            {"path_cost", stats(s.path_cost)}};
    }
    j["per_planner"] = per;
    return j.dump(2) + "\n";
}

} // namespace skelplan
