#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "skelplan/bench.hpp"
#include "skelplan/json_io.hpp"
#include "skelplan/svg.hpp"

namespace fs = std::filesystem;
using namespace skelplan;

namespace {

// exit codes: 0 ok, 1 at least one run failed, 2 usage/validation error
constexpr int kExitOk = 0;
constexpr int kExitRunFailure = 1;
constexpr int kExitUsage = 2;

void write_file(const std::string& path, const std::string& text) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::vector<double> parse_d_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("--d-list", "needs at least one value");
    return out;
}

struct SceneInputs {
    Environment env;
    std::optional<WorkspaceSkeleton> skeleton;
};

SceneInputs load_inputs(const std::string& scene_path, const std::string& skeleton_path) {
    SceneInputs in;
    in.env = load_scene(scene_path);
    if (!skeleton_path.empty()) {
        in.skeleton = load_skeleton(skeleton_path);
        if (in.skeleton->dim != in.env.dim())
            throw std::invalid_argument("scene and skeleton dimension mismatch");
        if (!in.skeleton->annotated())
            in.skeleton = annotate_clearance(*in.skeleton, in.env.geom);
    }
    return in;
}

RenderTree tree_from_result(const PlanResult& res) {
    RenderTree t;
    for (const Configuration& q : res.tree.configs) t.positions.push_back(q.position);
    t.parents = res.tree.parent;
    for (const Configuration& q : res.path) t.path.push_back(q.position);
    return t;
}

int cmd_plan(const std::string& scene_path, const std::string& skeleton_path,
             const std::string& planner, std::uint64_t seed, double cap_s,
             const PlannerConfig& overrides, const std::string& svg_out,
             const std::string& result_out) {
    if ((planner == "drrrt" || planner == "hasrrt") && skeleton_path.empty()) {
        std::cerr << "error: planner '" << planner << "' requires --skeleton\n";
        return kExitUsage;
    }
    SceneInputs in = load_inputs(scene_path, skeleton_path);

    PlannerConfig cfg = overrides;
    cfg.time_cap_s = cap_s;
    PlanResult res = run_single(in.env, in.skeleton ? &*in.skeleton : nullptr, planner, seed, cfg);
    res.record.seed = seed;

    std::cout << run_record_to_json(res.record);
    if (!result_out.empty()) write_file(result_out, plan_result_to_json(res));
    if (!svg_out.empty()) {
        RenderTree t = tree_from_result(res);
        write_file(svg_out, render_svg(in.env, in.skeleton ? &*in.skeleton : nullptr, &t));
    }
    return res.record.success ? kExitOk : kExitRunFailure;
}

int cmd_bench(const std::string& experiment_path, bool serial) {
    ExperimentBundle bundle = load_experiment(experiment_path);
    std::vector<BenchRow> rows = run_bench_matrix(bundle, !serial);
    fs::create_directories(bundle.spec.output_dir);
    write_file((fs::path(bundle.spec.output_dir) / "results.csv").string(), rows_to_csv(rows));
    write_file((fs::path(bundle.spec.output_dir) / "summary.json").string(),
               summary_to_json(summarize(rows)));
    std::cout << summary_to_json(summarize(rows));
    bool any_failed = false;
    for (const BenchRow& r : rows) any_failed |= !r.record.success;
    return any_failed ? kExitRunFailure : kExitOk;
}

int cmd_perturb(const std::string& experiment_path, const std::string& d_list_csv,
                double region_radius, bool serial) {
    ExperimentBundle bundle = load_experiment(experiment_path);
    std::vector<double> d_list = parse_d_list(d_list_csv);
    std::vector<BenchRow> rows = run_perturbation(bundle, d_list, region_radius, !serial);
    fs::create_directories(bundle.spec.output_dir);
    write_file((fs::path(bundle.spec.output_dir) / "perturb.csv").string(), rows_to_csv(rows));
    std::cout << rows_to_csv(rows);
    bool any_failed = false;
    for (const BenchRow& r : rows) any_failed |= !r.record.success;
    return any_failed ? kExitRunFailure : kExitOk;
}

int cmd_gen_env(const std::string& blockgrid_path, const std::string& scene_out,
                const std::string& skeleton_out) {
    ComposedEnvironment composed = compose_from_file(load_blockgrid(blockgrid_path));
    composed.skeleton = annotate_clearance(composed.skeleton, composed.env.geom);
    save_scene(composed.env, scene_out);
    save_skeleton(composed.skeleton, skeleton_out);
    std::cout << "wrote " << scene_out << " and " << skeleton_out << "\n";
    return kExitOk;
}

int cmd_render(const std::string& scene_path, const std::string& skeleton_path,
               const std::string& tree_path, const std::string& out_path) {
    SceneInputs in = load_inputs(scene_path, skeleton_path);
    std::optional<RenderTree> tree;
    if (!tree_path.empty()) tree = load_render_tree(tree_path);
    write_file(out_path, render_svg(in.env, in.skeleton ? &*in.skeleton : nullptr,
                                    tree ? &*tree : nullptr));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"skelplan: skeleton-guided sampling-based motion planning"};
    app.require_subcommand(1);

    // plan
    std::string scene, skeleton, planner, svg_out, result_out;
    std::uint64_t seed = 0;
    double cap_s = 60.0;
    PlannerConfig overrides;
    auto* plan = app.add_subcommand("plan", "run one planner on a scene");
    plan->add_option("scene", scene, "scene JSON file")->required();
    plan->add_option("--skeleton", skeleton, "skeleton JSON file");
    plan->add_option("--planner", planner, "rrt | drrrt | hasrrt")->required();
    plan->add_option("--seed", seed, "run seed")->required();
    plan->add_option("--cap", cap_s, "wall-clock cap in seconds");
    plan->add_option("--max-step", overrides.max_step, "extension step limit");
    plan->add_option("--explore-bias", overrides.explore_bias, "explore bias e in [0,1]");
    plan->add_option("--region-radius", overrides.region_max_radius, "max sampling-region radius");
    plan->add_option("--resolution", overrides.resolution, "edge validation resolution");
    plan->add_option("--iterations", overrides.iteration_cap, "iteration cap");
    plan->add_option("--svg", svg_out, "render the run to an SVG file");
    plan->add_option("-o,--out", result_out, "write the full plan result JSON");

    // bench
    std::string experiment;
    bool serial = false;
    auto* bench = app.add_subcommand("bench", "run a planner x seed experiment matrix");
    bench->add_option("experiment", experiment, "experiment JSON file")->required();
    bench->add_flag("--serial", serial, "disable the parallel worker pool");

    // perturb
    std::string perturb_experiment, d_list_csv;
    double region_radius = 0.0;
    bool perturb_serial = false;
    auto* perturb = app.add_subcommand("perturb", "skeleton-quality degradation study");
    perturb->add_option("experiment", perturb_experiment, "experiment JSON file")->required();
    perturb->add_option("--d-list", d_list_csv, "comma-separated shift distances")->required();
    perturb->add_option("--region-radius", region_radius, "max region radius override");
    perturb->add_flag("--serial", perturb_serial, "disable the parallel worker pool");

    // gen-env
    std::string blockgrid, scene_out, skeleton_out;
    auto* gen = app.add_subcommand("gen-env", "compose a scene + skeleton from a block grid");
    gen->add_option("blockgrid", blockgrid, "block-grid JSON file")->required();
    gen->add_option("-o,--scene-out", scene_out, "output scene file")->required();
    gen->add_option("-s,--skeleton-out", skeleton_out, "output skeleton file")->required();

    // render
    std::string r_scene, r_skeleton, r_tree, r_out;
    auto* render = app.add_subcommand("render", "render a 2D scene to SVG");
    render->add_option("scene", r_scene, "scene JSON file")->required();
    render->add_option("--skeleton", r_skeleton, "skeleton JSON file");
    render->add_option("--tree", r_tree, "plan result JSON with the tree to draw");
    render->add_option("-o,--out", r_out, "output SVG file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (plan->parsed())
            return cmd_plan(scene, skeleton, planner, seed, cap_s, overrides, svg_out, result_out);
        if (bench->parsed()) return cmd_bench(experiment, serial);
        if (perturb->parsed()) return cmd_perturb(perturb_experiment, d_list_csv, region_radius,
                                                  perturb_serial);
        if (gen->parsed()) return cmd_gen_env(blockgrid, scene_out, skeleton_out);
        if (render->parsed()) return cmd_render(r_scene, r_skeleton, r_tree, r_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
