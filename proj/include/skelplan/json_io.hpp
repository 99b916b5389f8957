#ifndef SKELPLAN_JSON_IO_HPP
#define SKELPLAN_JSON_IO_HPP

#include <string>

#include "skelplan/blocks.hpp"
#include "skelplan/cspace.hpp"
#include "skelplan/planners.hpp"
#include "skelplan/skeleton.hpp"

namespace skelplan {

// All file formats are JSON with a "format" tag:
//   scene/1      boundary, obstacles, robot, query, resolution
//   skeleton/1   vertices, edges, intermediate spacing, optional clearances
//   blockgrid/1  block grid plus robot/query for the composed scene
//   planresult/1 run record, config echo, tree, path
// Parse failures raise ParseError with file/byte context; structural
// problems raise std::invalid_argument naming the offender.

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

Environment load_scene(const std::string& path);
void save_scene(const Environment& env, const std::string& path);

WorkspaceSkeleton load_skeleton(const std::string& path);
void save_skeleton(const WorkspaceSkeleton& skel, const std::string& path);

struct BlockGridFile {
    std::string name;
    BlockGrid grid;
    RobotModel robot;
    Query query;
    double resolution = 0.0;
};

BlockGridFile load_blockgrid(const std::string& path);

// Scene composed from a block-grid file (walls, skeleton, robot, query).
struct ComposedEnvironment {
    Environment env;
    WorkspaceSkeleton skeleton;
};
ComposedEnvironment compose_from_file(const BlockGridFile& file);

std::string plan_result_to_json(const PlanResult& result, int indent = 2);
std::string run_record_to_json(const RunRecord& record, int indent = 2);

// Minimal tree/path view used by the SVG renderer.
struct RenderTree {
    std::vector<Vec3> positions;
    std::vector<int> parents;
    std::vector<Vec3> path;
};
RenderTree load_render_tree(const std::string& path);

} // namespace skelplan

#endif
