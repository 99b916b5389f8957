#include "skelplan/blocks.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace skelplan {

int face_axis(Face f) {
    switch (f) {
        case Face::PosX:
        case Face::NegX: return 0;
        case Face::PosY:
        case Face::NegY: return 1;
        default: return 2;
    }
}

int face_sign(Face f) {
    return (f == Face::PosX || f == Face::PosY || f == Face::PosZ) ? 1 : -1;
}

Face opposite_face(Face f) {
    switch (f) {
        case Face::PosX: return Face::NegX;
        case Face::NegX: return Face::PosX;
        case Face::PosY: return Face::NegY;
        case Face::NegY: return Face::PosY;
        case Face::PosZ: return Face::NegZ;
        default: return Face::PosZ;
    }
}

Face parse_face(const std::string& s) {
    if (s == "+x") return Face::PosX;
    if (s == "-x") return Face::NegX;
    if (s == "+y") return Face::PosY;
    if (s == "-y") return Face::NegY;
    if (s == "+z") return Face::PosZ;
    if (s == "-z") return Face::NegZ;
    throw std::invalid_argument("unknown face '" + s + "' (expected one of +x -x +y -y +z -z)");
}

std::string face_name(Face f) {
    switch (f) {
        case Face::PosX: return "+x";
        case Face::NegX: return "-x";
        case Face::PosY: return "+y";
        case Face::NegY: return "-y";
        case Face::PosZ: return "+z";
        default: return "-z";
    }
}

bool BlockSpec::is_open(Face f) const {
    return std::find(open_faces.begin(), open_faces.end(), f) != open_faces.end();
}

namespace {

std::string coords_name(const std::array<int, 3>& c, int dim) {
    std::string s = "(" + std::to_string(c[0]) + "," + std::to_string(c[1]);
    if (dim == 3) s += "," + std::to_string(c[2]);
    return s + ")";
}

} // namespace

ComposedScene compose_blocks(const BlockGrid& grid) {
    if (grid.dim != 2 && grid.dim != 3)
        throw std::invalid_argument("block grid dimension must be 2 or 3");
    if (grid.blocks.empty()) throw std::invalid_argument("block grid has no blocks");
    if (grid.block_side <= 0.0 || grid.wall_thickness <= 0.0 ||
        grid.wall_thickness * 2.0 >= grid.block_side)
        throw std::invalid_argument("block_side and wall_thickness are inconsistent");

    int nfaces = grid.dim == 2 ? 4 : 6;
    std::map<std::array<int, 3>, const BlockSpec*> by_coords;
    for (const BlockSpec& b : grid.blocks) {
        if (by_coords.count(b.coords))
            throw std::invalid_argument("duplicate block at " + coords_name(b.coords, grid.dim));
        if (b.open_faces.empty())
            throw std::invalid_argument("block " + coords_name(b.coords, grid.dim) +
                                        " has no traversable opening");
        for (Face f : b.open_faces)
            if (face_axis(f) >= grid.dim)
                throw std::invalid_argument("block " + coords_name(b.coords, grid.dim) +
                                            ": face " + face_name(f) + " invalid in 2D");
        by_coords[b.coords] = &b;
    }

    // Shared faces must agree.
    for (const BlockSpec& b : grid.blocks) {
        for (int f = 0; f < nfaces; ++f) {
            Face face = static_cast<Face>(f);
            std::array<int, 3> nc = b.coords;
            nc[face_axis(face)] += face_sign(face);
            auto it = by_coords.find(nc);
            if (it == by_coords.end()) continue;
            if (b.is_open(face) != it->second->is_open(opposite_face(face)))
                throw std::invalid_argument(
                    "blocks " + coords_name(b.coords, grid.dim) + " and " +
                    coords_name(nc, grid.dim) + " disagree on the shared face " +
                    face_name(face));
        }
    }

    const double s = grid.block_side;
    const double w = grid.wall_thickness;

    ComposedScene out;
    out.geom.dim = grid.dim;
    Vec3 lo{1e300, 1e300, grid.dim == 3 ? 1e300 : 0.0};
    Vec3 hi{-1e300, -1e300, grid.dim == 3 ? -1e300 : 0.0};
    for (const BlockSpec& b : grid.blocks) {
        for (int i = 0; i < grid.dim; ++i) {
            lo[i] = std::min(lo[i], b.coords[i] * s);
            hi[i] = std::max(hi[i], (b.coords[i] + 1) * s);
        }
    }
    out.geom.bmin = lo;
    out.geom.bmax = hi;

    // Wall slabs for closed faces, thickness w inward from the face plane.
    for (const BlockSpec& b : grid.blocks) {
        Vec3 cell_min{b.coords[0] * s, b.coords[1] * s, grid.dim == 3 ? b.coords[2] * s : 0.0};
        Vec3 cell_max = cell_min + Vec3{s, s, grid.dim == 3 ? s : 0.0};
        for (int f = 0; f < nfaces; ++f) {
            Face face = static_cast<Face>(f);
            if (b.is_open(face)) continue;
            Vec3 mn = cell_min, mx = cell_max;
            int ax = face_axis(face);
            if (face_sign(face) > 0)
                mn[ax] = cell_max[ax] - w;
            else
                mx[ax] = cell_min[ax] + w;
            if (grid.dim == 2) mn.z = mx.z = 0.0;
            out.geom.obstacles.push_back({ConvexShape::box(mn, mx, grid.dim), Placement{}});
        }
    }

    // Skeleton: one center vertex per block, one vertex per open face
    // (shared faces merge). Vertex ids follow the sorted block order.
    WorkspaceSkeleton& skel = out.skeleton;
    skel.dim = grid.dim;
    skel.intermediate_spacing =
        grid.intermediate_spacing > 0.0 ? grid.intermediate_spacing : s / 8.0;

    std::map<std::array<int, 3>, int> center_id;
    // Face key: (cell coords of the lower cell along the axis, axis).
    std::map<std::pair<std::array<int, 3>, int>, int> face_id;
    int next_id = 0;

    auto cell_center = [&](const std::array<int, 3>& c) {
        return Vec3{(c[0] + 0.5) * s, (c[1] + 0.5) * s, grid.dim == 3 ? (c[2] + 0.5) * s : 0.0};
    };

    for (const auto& [coords, block] : by_coords) {
        center_id[coords] = next_id;
        skel.vertices[next_id] = {cell_center(coords)};
        ++next_id;
    }
    for (const auto& [coords, block] : by_coords) {
        Vec3 center = cell_center(coords);
        for (int f = 0; f < nfaces; ++f) {
            Face face = static_cast<Face>(f);
            if (!block->is_open(face)) continue;
            int ax = face_axis(face);
            std::array<int, 3> key = coords;
            if (face_sign(face) < 0) key[ax] -= 1; // lower cell owns the face key
            auto fk = std::make_pair(key, ax);
            auto it = face_id.find(fk);
            int fid;
            if (it == face_id.end()) {
                fid = next_id++;
                Vec3 fpos = center;
                fpos[ax] += face_sign(face) * s / 2.0;
                skel.vertices[fid] = {fpos};
                face_id[fk] = fid;
            } else {
                fid = it->second;
            }
            SkeletonEdge e;
            e.source = center_id[coords];
            e.target = fid;
            e.intermediates = straight_intermediates(center, skel.vertices[fid].position,
                                                     skel.intermediate_spacing);
            skel.edges.push_back(std::move(e));
        }
    }
    std::sort(skel.edges.begin(), skel.edges.end(), [](const SkeletonEdge& a, const SkeletonEdge& b) {
        return a.source < b.source || (a.source == b.source && a.target < b.target);
    });

    return out;
}

} // namespace skelplan
