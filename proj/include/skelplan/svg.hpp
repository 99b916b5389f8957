#ifndef SKELPLAN_SVG_HPP
#define SKELPLAN_SVG_HPP

#include <optional>
#include <string>

#include "skelplan/cspace.hpp"
#include "skelplan/json_io.hpp"
#include "skelplan/skeleton.hpp"

namespace skelplan {

// 2D scene rendering: boundary, obstacles, skeleton, tree edges, solution
// path, start/goal markers. Output is byte-identical for identical inputs.
// Throws std::invalid_argument for 3D scenes.
std::string render_svg(const Environment& env, const WorkspaceSkeleton* skeleton,
                       const RenderTree* tree);

} // namespace skelplan

#endif
