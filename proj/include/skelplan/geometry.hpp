#ifndef SKELPLAN_GEOMETRY_HPP
#define SKELPLAN_GEOMETRY_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace skelplan {

// Workspace point/vector. 2D scenes keep z == 0 everywhere; the scene
// dimension is carried by the environment, not by each point.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_ = 0.0) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }

    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

bool all_finite(const Vec3& v);

// Unit quaternion (w, x, y, z). Kept normalized; composition renormalizes
// when the norm drifts beyond 1e-9.
struct Quat {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    static Quat identity() { return {}; }
    static Quat from_axis_angle(const Vec3& axis, double angle);

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
    Quat normalized() const;
    Quat operator*(const Quat& o) const;
    Vec3 rotate(const Vec3& v) const;
    double dot(const Quat& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
};

// Shortest-arc interpolation; t in [0,1].
Quat slerp(const Quat& a, const Quat& b, double t);
// Geodesic angle between orientations, in [0, pi].
double quat_angle(const Quat& a, const Quat& b);

enum class ShapeKind { Box, Polygon };

// Convex shape in its local frame. Boxes work in 2D and 3D; polygons are
// 2D only (vertices are hull-ordered counterclockwise at construction).
class ConvexShape {
public:
    static ConvexShape box(const Vec3& mn, const Vec3& mx, int dim);
    static ConvexShape polygon(std::vector<Vec3> vertices);

    ShapeKind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::vector<Vec3>& vertices() const { return vertices_; }
    const Vec3& box_min() const { return box_min_; }
    const Vec3& box_max() const { return box_max_; }

    // Largest vertex distance from the local origin.
    double circumradius() const;

private:
    ConvexShape() = default;
    ShapeKind kind_ = ShapeKind::Box;
    int dim_ = 2;
    std::vector<Vec3> vertices_;
    Vec3 box_min_, box_max_;
};

// Rigid placement: translation plus a rotation (angle about z in 2D,
// quaternion in 3D). Identity by default.
struct Placement {
    Vec3 translation;
    double angle = 0.0;
    Quat rotation = Quat::identity();

    static Placement at(const Vec3& t) {
        Placement p;
        p.translation = t;
        return p;
    }
};

Vec3 apply_placement(const Placement& pl, int dim, const Vec3& local);
Vec3 invert_placement(const Placement& pl, int dim, const Vec3& world);
// outer applied after inner: result(v) = outer(inner(v)).
Placement compose_placements(const Placement& outer, const Placement& inner, int dim);

struct PlacedShape {
    ConvexShape shape;
    Placement placement;
};

// Bounded axis-aligned workspace with convex obstacles.
struct EnvironmentGeometry {
    int dim = 2;
    Vec3 bmin, bmax;
    std::vector<PlacedShape> obstacles;

    double shortest_side() const;
    double diagonal() const { return (bmax - bmin).norm(); }
    bool inside_boundary(const Vec3& p) const;
};

// Closed-set convention: boundary contact counts as intersection.
bool shapes_intersect(const ConvexShape& a, const Placement& pa,
                      const ConvexShape& b, const Placement& pb, int dim);

bool point_in_placed_shape(const Vec3& p, const ConvexShape& s, const Placement& pl, int dim);

// Distance from a point to the surface of a placed shape; 0 inside.
double point_to_placed_shape_distance(const Vec3& p, const ConvexShape& s,
                                      const Placement& pl, int dim);

// Min distance to any obstacle surface or boundary wall; 0 inside an
// obstacle. Throws std::domain_error if p lies outside the boundary.
double point_clearance(const Vec3& p, const EnvironmentGeometry& env);

// Same, but points outside the boundary report 0 instead of throwing.
double clearance_or_zero(const Vec3& p, const EnvironmentGeometry& env);

// True iff every vertex of the placed shape lies in the closed boundary box.
bool boundary_contains(const EnvironmentGeometry& env, const ConvexShape& s,
                       const Placement& pl);

} // namespace skelplan

#endif
