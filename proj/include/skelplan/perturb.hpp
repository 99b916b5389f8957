#ifndef SKELPLAN_PERTURB_HPP
#define SKELPLAN_PERTURB_HPP

#include <cstdint>

#include "skelplan/geometry.hpp"
#include "skelplan/skeleton.hpp"

namespace skelplan {

struct PerturbationSpec {
    double d = 0.0; // shift magnitude, workspace units
    std::uint64_t seed = 0;
};

// Shifts every vertex except the start- and goal-nearest ones by exactly d
// in a random direction, rejection-resampling (up to 1000 tries, then left
// unmoved) until the new position lies in the free workspace. Edges with a
// moved endpoint get straight intermediates regenerated at the skeleton's
// spacing; clearance annotations are dropped on anything touched.
WorkspaceSkeleton perturb_skeleton(const WorkspaceSkeleton& skel, const PerturbationSpec& spec,
                                   const EnvironmentGeometry& env, const Vec3& start,
                                   const Vec3& goal);

} // namespace skelplan

#endif
