#include "skelplan/perturb.hpp"

#include <set>

#include "skelplan/rng.hpp"

namespace skelplan {

WorkspaceSkeleton perturb_skeleton(const WorkspaceSkeleton& skel, const PerturbationSpec& spec,
                                   const EnvironmentGeometry& env, const Vec3& start,
                                   const Vec3& goal) {
    if (!(spec.d >= 0.0) || !std::isfinite(spec.d))
        throw std::invalid_argument("perturbation distance must be finite and >= 0");

    WorkspaceSkeleton out = skel;
    if (skel.empty() || spec.d == 0.0) return out;

    std::set<int> pinned{nearest_skeleton_vertex(skel, start), nearest_skeleton_vertex(skel, goal)};

    Rng rng(spec.seed);
    std::set<int> moved;
    for (auto& [id, v] : out.vertices) {
        if (pinned.count(id)) continue;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            Vec3 candidate = v.position + rng.unit_vector(skel.dim) * spec.d;
            if (env.inside_boundary(candidate) && point_clearance(candidate, env) > 0.0) {
                v.position = candidate;
                v.clearance = -1.0;
                moved.insert(id);
                break;
            }
        }
    }

    double spacing = out.intermediate_spacing > 0.0 ? out.intermediate_spacing
                                                    : env.shortest_side() / 50.0;
    out.intermediate_spacing = spacing;
    for (SkeletonEdge& e : out.edges) {
        if (!moved.count(e.source) && !moved.count(e.target)) continue;
        e.intermediates = straight_intermediates(out.vertices.at(e.source).position,
                                                 out.vertices.at(e.target).position, spacing);
        e.min_clearance = -1.0;
    }
    return out;
}

} // namespace skelplan
