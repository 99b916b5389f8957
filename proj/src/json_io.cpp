#include "skelplan/json_io.hpp"

#include <fstream>

#include <json.hpp>

namespace skelplan {

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

void expect_format(const json& j, const std::string& tag, const std::string& path) {
    if (!j.contains("format") || j.at("format").get<std::string>() != tag)
        throw std::invalid_argument(path + ": expected format tag '" + tag + "'");
}

Vec3 parse_vec(const json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw std::invalid_argument("coordinate array must have " + std::to_string(dim) +
                                    " entries");
    Vec3 v;
    for (int i = 0; i < dim; ++i) v[i] = j[i].get<double>();
    return v;
}

json vec_to_json(const Vec3& v, int dim) {
    json j = json::array();
    for (int i = 0; i < dim; ++i) j.push_back(v[i]);
    return j;
}

ConvexShape parse_shape(const json& j, int dim) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "box")
        return ConvexShape::box(parse_vec(j.at("min"), dim), parse_vec(j.at("max"), dim), dim);
    if (kind == "polygon") {
        if (dim != 2) throw std::invalid_argument("polygon obstacles are 2D only");
        std::vector<Vec3> pts;
        for (const json& p : j.at("vertices")) pts.push_back(parse_vec(p, 2));
        return ConvexShape::polygon(std::move(pts));
    }
    throw std::invalid_argument("unknown shape kind '" + kind + "'");
}

json shape_to_json(const ConvexShape& s, int dim) {
    json j;
    if (s.kind() == ShapeKind::Box) {
        j["kind"] = "box";
        j["min"] = vec_to_json(s.box_min(), dim);
        j["max"] = vec_to_json(s.box_max(), dim);
    } else {
        j["kind"] = "polygon";
        json verts = json::array();
        for (const Vec3& v : s.vertices()) verts.push_back(vec_to_json(v, 2));
        j["vertices"] = verts;
    }
    return j;
}

Placement parse_placement(const json& j, int dim) {
    Placement pl;
    if (j.contains("translation")) pl.translation = parse_vec(j.at("translation"), dim);
    if (j.contains("angle")) pl.angle = j.at("angle").get<double>();
    if (j.contains("quaternion")) {
        const json& q = j.at("quaternion");
        pl.rotation = Quat{q.at(0).get<double>(), q.at(1).get<double>(), q.at(2).get<double>(),
                           q.at(3).get<double>()};
        if (std::abs(pl.rotation.norm() - 1.0) > 1e-9)
            throw std::invalid_argument("placement quaternion must be unit length");
    }
    return pl;
}

RotationTag parse_rotation_tag(const std::string& s) {
    if (s == "none") return RotationTag::None;
    if (s == "planar") return RotationTag::Planar;
    if (s == "full3d") return RotationTag::Full3D;
    throw std::invalid_argument("unknown rotation tag '" + s + "'");
}

std::string rotation_tag_name(RotationTag t) {
    switch (t) {
        case RotationTag::None: return "none";
        case RotationTag::Planar: return "planar";
        default: return "full3d";
    }
}

RobotModel parse_robot(const json& j, int dim) {
    RobotModel robot;
    robot.rotation = parse_rotation_tag(j.at("rotation").get<std::string>());
    if (dim == 2 && robot.rotation == RotationTag::Full3D)
        throw std::invalid_argument("full3d rotation requires a 3D scene");
    for (const json& part : j.at("parts")) robot.parts.push_back(parse_shape(part, dim));
    if (robot.parts.empty()) throw std::invalid_argument("robot needs at least one body part");
    return robot;
}

Configuration parse_config(const json& j, int dim, RotationTag tag) {
    Configuration q;
    q.position = parse_vec(j.at("position"), dim);
    if (tag == RotationTag::Planar && j.contains("angle"))
        q.angle = wrap_angle(j.at("angle").get<double>());
    if (tag == RotationTag::Full3D && j.contains("quaternion")) {
        const json& qq = j.at("quaternion");
        q.orientation = Quat{qq.at(0).get<double>(), qq.at(1).get<double>(),
                             qq.at(2).get<double>(), qq.at(3).get<double>()};
        if (std::abs(q.orientation.norm() - 1.0) > 1e-9)
            throw std::invalid_argument("configuration quaternion must be unit length");
    }
    return q;
}

json config_to_json(const Configuration& q, int dim, RotationTag tag) {
    json j;
    j["position"] = vec_to_json(q.position, dim);
    if (tag == RotationTag::Planar) j["angle"] = q.angle;
    if (tag == RotationTag::Full3D)
        j["quaternion"] = {q.orientation.w, q.orientation.x, q.orientation.y, q.orientation.z};
    return j;
}

Query parse_query(const json& j, int dim, RotationTag tag) {
    Query q;
    q.start = parse_config(j.at("start"), dim, tag);
    q.goal = parse_config(j.at("goal"), dim, tag);
    q.goal_tolerance = j.at("goal_tolerance").get<double>();
    if (!(q.goal_tolerance > 0.0))
        throw std::invalid_argument("goal_tolerance must be > 0");
    return q;
}

} // namespace

Environment load_scene(const std::string& path) {
    json j = read_json_file(path);
    expect_format(j, "scene/1", path);
    Environment env;
    env.name = j.value("name", std::string{});
    env.geom.dim = j.at("dim").get<int>();
    if (env.geom.dim != 2 && env.geom.dim != 3)
        throw std::invalid_argument(path + ": dim must be 2 or 3");
    env.geom.bmin = parse_vec(j.at("boundary").at("min"), env.geom.dim);
    env.geom.bmax = parse_vec(j.at("boundary").at("max"), env.geom.dim);
    for (int i = 0; i < env.geom.dim; ++i)
        if (!(env.geom.bmin[i] < env.geom.bmax[i]))
            throw std::invalid_argument(path + ": boundary min must be strictly below max");
    if (j.contains("obstacles"))
        for (const json& ob : j.at("obstacles")) {
            PlacedShape ps{parse_shape(ob, env.geom.dim), parse_placement(ob, env.geom.dim)};
            env.geom.obstacles.push_back(std::move(ps));
        }
    env.robot = parse_robot(j.at("robot"), env.geom.dim);
    env.query = parse_query(j.at("query"), env.geom.dim, env.robot.rotation);
    env.resolution = j.value("resolution", 0.0);
    return env;
}

void save_scene(const Environment& env, const std::string& path) {
    json j;
    j["format"] = "scene/1";
    if (!env.name.empty()) j["name"] = env.name;
    j["dim"] = env.dim();
    j["boundary"] = {{"min", vec_to_json(env.geom.bmin, env.dim())},
                     {"max", vec_to_json(env.geom.bmax, env.dim())}};
    json obs = json::array();
    for (const PlacedShape& ps : env.geom.obstacles) {
        json o = shape_to_json(ps.shape, env.dim());
        if (ps.placement.translation.norm2() != 0.0)
            o["translation"] = vec_to_json(ps.placement.translation, env.dim());
        if (ps.placement.angle != 0.0) o["angle"] = ps.placement.angle;
        obs.push_back(o);
    }
    j["obstacles"] = obs;
    json robot;
    robot["rotation"] = rotation_tag_name(env.robot.rotation);
    json parts = json::array();
    for (const ConvexShape& p : env.robot.parts) parts.push_back(shape_to_json(p, env.dim()));
    robot["parts"] = parts;
    j["robot"] = robot;
    j["query"] = {{"start", config_to_json(env.query.start, env.dim(), env.robot.rotation)},
                  {"goal", config_to_json(env.query.goal, env.dim(), env.robot.rotation)},
                  {"goal_tolerance", env.query.goal_tolerance}};
    if (env.resolution > 0.0) j["resolution"] = env.resolution;
    write_text_file(path, j.dump(2) + "\n");
}

WorkspaceSkeleton load_skeleton(const std::string& path) {
    json j = read_json_file(path);
    expect_format(j, "skeleton/1", path);
    WorkspaceSkeleton s;
    s.dim = j.at("dim").get<int>();
    s.intermediate_spacing = j.value("intermediate_spacing", 0.0);
    for (const json& vj : j.at("vertices")) {
        int id = vj.at("id").get<int>();
        if (s.vertices.count(id))
            throw std::invalid_argument(path + ": duplicate vertex id " + std::to_string(id));
        SkeletonVertex v;
        v.position = parse_vec(vj.at("position"), s.dim);
        v.clearance = vj.value("clearance", -1.0);
        s.vertices[id] = v;
    }
    for (const json& ej : j.at("edges")) {
        SkeletonEdge e;
        e.source = ej.at("source").get<int>();
        e.target = ej.at("target").get<int>();
        for (const json& p : ej.at("intermediates")) e.intermediates.push_back(parse_vec(p, s.dim));
        e.min_clearance = ej.value("min_clearance", -1.0);
        s.edges.push_back(std::move(e));
    }
    s.validate();
    return s;
}

void save_skeleton(const WorkspaceSkeleton& skel, const std::string& path) {
    json j;
    j["format"] = "skeleton/1";
    j["dim"] = skel.dim;
    if (skel.intermediate_spacing > 0.0) j["intermediate_spacing"] = skel.intermediate_spacing;
    json verts = json::array();
    for (const auto& [id, v] : skel.vertices) {
        json vj;
        vj["id"] = id;
        vj["position"] = vec_to_json(v.position, skel.dim);
        if (v.clearance >= 0.0) vj["clearance"] = v.clearance;
        verts.push_back(vj);
    }
    j["vertices"] = verts;
    json edges = json::array();
    for (const SkeletonEdge& e : skel.edges) {
        json ej;
        ej["source"] = e.source;
        ej["target"] = e.target;
        json ints = json::array();
        for (const Vec3& p : e.intermediates) ints.push_back(vec_to_json(p, skel.dim));
        ej["intermediates"] = ints;
        if (e.min_clearance >= 0.0) ej["min_clearance"] = e.min_clearance;
        edges.push_back(ej);
    }
    j["edges"] = edges;
    write_text_file(path, j.dump(2) + "\n");
}

BlockGridFile load_blockgrid(const std::string& path) {
    json j = read_json_file(path);
    expect_format(j, "blockgrid/1", path);
    BlockGridFile f;
    f.name = j.value("name", std::string{});
    f.grid.dim = j.at("dim").get<int>();
    f.grid.block_side = j.at("block_side").get<double>();
    f.grid.wall_thickness = j.at("wall_thickness").get<double>();
    f.grid.intermediate_spacing = j.value("intermediate_spacing", 0.0);
    for (const json& bj : j.at("blocks")) {
        BlockSpec b;
        const json& c = bj.at("coords");
        for (size_t i = 0; i < c.size() && i < 3; ++i) b.coords[i] = c[i].get<int>();
        for (const json& fj : bj.at("open")) b.open_faces.push_back(parse_face(fj.get<std::string>()));
        f.grid.blocks.push_back(std::move(b));
    }
    f.robot = parse_robot(j.at("robot"), f.grid.dim);
    f.query = parse_query(j.at("query"), f.grid.dim, f.robot.rotation);
    f.resolution = j.value("resolution", 0.0);
    return f;
}

ComposedEnvironment compose_from_file(const BlockGridFile& file) {
    ComposedScene scene = compose_blocks(file.grid);
    ComposedEnvironment out;
    out.env.name = file.name;
    out.env.geom = std::move(scene.geom);
    out.env.robot = file.robot;
    out.env.query = file.query;
    out.env.resolution = file.resolution;
    out.skeleton = std::move(scene.skeleton);
    return out;
}

namespace {

json record_to_json_obj(const RunRecord& r) {
    json j;
    j["planner"] = r.planner;
    j["seed"] = r.seed;
    j["success"] = r.success;
    j["time_s"] = r.time_s;
    j["vertices"] = r.vertices;
    j["cd_calls"] = r.cd_calls;
    if (r.path_cost) j["path_cost"] = *r.path_cost;
    if (r.env_region_frac) j["env_region_frac"] = *r.env_region_frac;
    return j;
}

} // namespace

std::string run_record_to_json(const RunRecord& record, int indent) {
    return record_to_json_obj(record).dump(indent) + "\n";
}

std::string plan_result_to_json(const PlanResult& result, int indent) {
    json j;
    j["format"] = "planresult/1";
    j["record"] = record_to_json_obj(result.record);
    j["config"] = {{"explore_bias", result.config.explore_bias},
                   {"max_step", result.config.max_step},
                   {"region_max_radius", result.config.region_max_radius},
                   {"resolution", result.config.resolution},
                   {"goal_tolerance", result.config.goal_tolerance},
                   {"iteration_cap", result.config.iteration_cap},
                   {"time_cap_s", result.config.time_cap_s},
                   {"seed", result.config.seed}};

    json tree;
    json verts = json::array();
    for (const Configuration& q : result.tree.configs) {
        json v;
        v["position"] = {q.position.x, q.position.y, q.position.z};
        v["angle"] = q.angle;
        v["quaternion"] = {q.orientation.w, q.orientation.x, q.orientation.y, q.orientation.z};
        verts.push_back(v);
    }
    tree["vertices"] = verts;
    tree["parents"] = result.tree.parent;
    j["tree"] = tree;

    json path = json::array();
    for (const Configuration& q : result.path)
        path.push_back(json{{"position", {q.position.x, q.position.y, q.position.z}}});
    j["path"] = path;

    json regions = json::array();
    for (const RegionTrace& t : result.regions)
        regions.push_back(json{{"region_id", t.region_id},
                               {"edge", t.edge},
                               {"successes", t.successes},
                               {"failures", t.failures},
                               {"retired", t.retired}});
    j["regions"] = regions;
    return j.dump(indent) + "\n";
}

RenderTree load_render_tree(const std::string& path) {
    json j = read_json_file(path);
    expect_format(j, "planresult/1", path);
    RenderTree t;
    for (const json& v : j.at("tree").at("vertices")) {
        const json& p = v.at("position");
        t.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>(),
                               p.size() > 2 ? p.at(2).get<double>() : 0.0});
    }
    for (const json& p : j.at("tree").at("parents")) t.parents.push_back(p.get<int>());
    for (const json& v : j.at("path")) {
        const json& p = v.at("position");
        t.path.push_back({p.at(0).get<double>(), p.at(1).get<double>(),
                          p.size() > 2 ? p.at(2).get<double>() : 0.0});
    }
    return t;
}

} // namespace skelplan
