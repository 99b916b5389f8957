#ifndef SKELPLAN_SKELETON_HPP
#define SKELPLAN_SKELETON_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "skelplan/geometry.hpp"

namespace skelplan {

// clearance < 0 means "not annotated yet"
struct SkeletonVertex {
    Vec3 position;
    double clearance = -1.0;
};

struct SkeletonEdge {
    int source = -1;
    int target = -1;
    std::vector<Vec3> intermediates; // starts at source position, ends at target position
    double min_clearance = -1.0;
};

// Undirected workspace skeleton. Edges carry ordered intermediate points at
// spacing <= intermediate_spacing.
struct WorkspaceSkeleton {
    int dim = 2;
    double intermediate_spacing = 0.0;
    std::map<int, SkeletonVertex> vertices;
    std::vector<SkeletonEdge> edges;

    bool empty() const { return vertices.empty(); }
    bool annotated() const;

    // Throws std::invalid_argument naming the offending vertex/edge.
    void validate() const;
};

// Straight chain from a to b at spacing <= `spacing`, endpoints included.
std::vector<Vec3> straight_intermediates(const Vec3& a, const Vec3& b, double spacing);

// Serial reference for clearance annotation; the parallel kernel must match
// it bit for bit.
WorkspaceSkeleton annotate_clearance_serial(const WorkspaceSkeleton& skel,
                                            const EnvironmentGeometry& env);
// OpenMP-parallel over vertices and edges.
WorkspaceSkeleton annotate_clearance(const WorkspaceSkeleton& skel,
                                     const EnvironmentGeometry& env);

// Vertex minimizing Euclidean distance to p; ties to lowest id.
int nearest_skeleton_vertex(const WorkspaceSkeleton& skel, const Vec3& p);

struct DirectedEdge {
    int source = -1;
    int target = -1;
    std::vector<Vec3> intermediates;
    double min_clearance = -1.0;
};

// Query-directed skeleton: acyclic, every vertex on some source->sink path.
struct DirectedQuerySkeleton {
    int dim = 2;
    double intermediate_spacing = 0.0;
    int source = -1;
    int sink = -1;
    std::map<int, SkeletonVertex> vertices;
    std::vector<DirectedEdge> edges;
    std::map<int, std::vector<int>> out_edges; // vertex id -> edge indices, ascending
};

// Raised when the start- and goal-nearest vertices are not connected.
class NoGuidanceError : public std::runtime_error {
public:
    explicit NoGuidanceError(const std::string& what) : std::runtime_error(what) {}
};

// Orients edges by BFS hop level from the start-nearest vertex (equal-level
// edges dropped) and keeps only vertices/edges on some directed path from
// source to sink.
DirectedQuerySkeleton direct_and_prune(const WorkspaceSkeleton& skel, const Vec3& start,
                                       const Vec3& goal);

} // namespace skelplan

#endif
