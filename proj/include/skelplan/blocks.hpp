#ifndef SKELPLAN_BLOCKS_HPP
#define SKELPLAN_BLOCKS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "skelplan/geometry.hpp"
#include "skelplan/skeleton.hpp"

namespace skelplan {

// Block faces. In 2D only the x/y faces are meaningful.
enum class Face : std::uint8_t { PosX = 0, NegX, PosY, NegY, PosZ, NegZ };

int face_axis(Face f);
int face_sign(Face f); // +1 or -1
Face opposite_face(Face f);
Face parse_face(const std::string& s); // "+x", "-y", ...
std::string face_name(Face f);

// One cubic room in the grid: closed faces get wall slabs, open faces are
// tunnel openings into the neighbor (or the boundary on the hull).
struct BlockSpec {
    std::array<int, 3> coords{0, 0, 0};
    std::vector<Face> open_faces;

    bool is_open(Face f) const;
};

struct BlockGrid {
    int dim = 2;
    double block_side = 10.0;
    double wall_thickness = 1.0;
    double intermediate_spacing = 0.0; // 0 -> block_side / 8
    std::vector<BlockSpec> blocks;
};

struct ComposedScene {
    EnvironmentGeometry geom;
    WorkspaceSkeleton skeleton;
};

// Builds the walls-plus-tunnels environment and its per-block skeleton
// (center vertex, one vertex per open face, straight edges; shared open
// faces merge into one vertex). Intermediate spacing is block_side / 8.
// Throws std::invalid_argument on mismatched shared faces or a block with
// no opening.
ComposedScene compose_blocks(const BlockGrid& grid);

} // namespace skelplan

#endif
