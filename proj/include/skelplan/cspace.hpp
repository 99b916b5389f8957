#ifndef SKELPLAN_CSPACE_HPP
#define SKELPLAN_CSPACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "skelplan/geometry.hpp"
#include "skelplan/rng.hpp"

namespace skelplan {

enum class RotationTag { None, Planar, Full3D };

// Rigid-body robot as a union of convex parts, all in one body frame.
// Validity requires every part to be collision-free and inside the boundary.
struct RobotModel {
    std::vector<ConvexShape> parts;
    RotationTag rotation = RotationTag::None;

    int dof(int dim) const {
        int rot = rotation == RotationTag::None ? 0 : (rotation == RotationTag::Planar ? 1 : 3);
        return dim + rot;
    }
    double circumradius() const {
        double r = 0.0;
        for (const ConvexShape& p : parts) r = std::max(r, p.circumradius());
        return r;
    }
    // Radius of the largest origin-centered ball inside a single body part;
    // 0 when no part contains the origin. A placement at a point whose
    // clearance is below this provably collides.
    double fit_radius() const;
};

struct Configuration {
    Vec3 position;
    double angle = 0.0;           // used when rotation tag is Planar
    Quat orientation = Quat::identity(); // used when Full3D
};

struct Query {
    Configuration start;
    Configuration goal;
    double goal_tolerance = 0.0;
};

struct Environment {
    std::string name;
    EnvironmentGeometry geom;
    RobotModel robot;
    Query query;
    double resolution = 0.0; // 0 -> shortest boundary side / 100

    int dim() const { return geom.dim; }
    double edge_resolution() const {
        return resolution > 0.0 ? resolution : geom.shortest_side() / 100.0;
    }
};

// One increment per single-configuration validity test.
struct ValidityCounter {
    long long cd_calls = 0;
};

// wrap to (-pi, pi]
double wrap_angle(double a);

Placement config_placement(const RobotModel& robot, int dim, const Configuration& q);

bool is_valid(const Configuration& q, const Environment& env, ValidityCounter& counter);

// Euclidean positional distance plus circumradius-weighted rotational
// displacement. Symmetric; zero iff equal.
double distance(const Environment& env, const Configuration& a, const Configuration& b);

// Straight segment in position, shortest-arc in rotation; t in [0,1].
Configuration interpolate(const Environment& env, const Configuration& a,
                          const Configuration& b, double t);

// Checks interpolated configurations at spacing <= resolution, both
// endpoints inclusive. Resolution-complete only: obstacles thinner than the
// spacing can slip between samples.
bool validate_edge(const Configuration& a, const Configuration& b, const Environment& env,
                   double resolution, ValidityCounter& counter);

// Walks from q_near toward q_rand (truncated at max_step) in resolution
// steps and returns the furthest valid prefix; nullopt if even the first
// step is invalid.
std::optional<Configuration> extend(const Configuration& q_near, const Configuration& q_rand,
                                    const Environment& env, double max_step, double resolution,
                                    ValidityCounter& counter);

Configuration sample_uniform(const Environment& env, Rng& rng);

// Position uniform in the ball about `center`, clipped to the boundary box;
// orientation uniform over the robot's rotational freedom.
Configuration sample_in_ball(const Environment& env, const Vec3& center, double radius, Rng& rng);

// Tree over configurations; vertex ids are insertion order, root is 0.
struct TreeRoadmap {
    std::vector<Configuration> configs;
    std::vector<int> parent;     // -1 for the root
    std::vector<double> cost;    // edge cost to parent

    int add_root(const Configuration& q) {
        configs.push_back(q);
        parent.push_back(-1);
        cost.push_back(0.0);
        return 0;
    }
    int add_child(int parent_id, const Configuration& q, double edge_cost) {
        configs.push_back(q);
        parent.push_back(parent_id);
        cost.push_back(edge_cost);
        return static_cast<int>(configs.size()) - 1;
    }
    int size() const { return static_cast<int>(configs.size()); }
};

// Vertex minimizing distance(tree[v], q); ties broken by lowest id.
int nearest_neighbor(const Environment& env, const TreeRoadmap& tree, const Configuration& q);

} // namespace skelplan

#endif
