#include "skelplan/cspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skelplan {

double RobotModel::fit_radius() const {
    double best = 0.0;
    for (const ConvexShape& part : parts) {
        int d = part.dim();
        if (part.kind() == ShapeKind::Box) {
            double r = std::numeric_limits<double>::infinity();
            bool inside = true;
            for (int i = 0; i < d; ++i) {
                if (part.box_min()[i] >= 0.0 || part.box_max()[i] <= 0.0) inside = false;
                r = std::min(r, std::min(-part.box_min()[i], part.box_max()[i]));
            }
            if (inside) best = std::max(best, r);
        } else {
            Placement identity;
            if (point_in_placed_shape({0, 0, 0}, part, identity, d)) {
                double r = point_to_placed_shape_distance({0, 0, 0}, part, identity, d);
                // inside => distance reports 0; recompute against the edges
                const std::vector<Vec3>& v = part.vertices();
                r = std::numeric_limits<double>::infinity();
                for (size_t i = 0; i < v.size(); ++i) {
                    const Vec3& a = v[i];
                    const Vec3& b = v[(i + 1) % v.size()];
                    Vec3 ab = b - a;
                    double t = std::clamp((-1.0 * a).dot(ab) / ab.norm2(), 0.0, 1.0);
                    r = std::min(r, (a + ab * t).norm());
                }
                best = std::max(best, r);
            }
        }
    }
    return best;
}

double wrap_angle(double a) {
    constexpr double pi = 3.14159265358979323846;
    constexpr double two_pi = 2.0 * pi;
    a = std::fmod(a, two_pi);
    if (a <= -pi) a += two_pi;
    if (a > pi) a -= two_pi;
    return a;
}

Placement config_placement(const RobotModel& robot, int dim, const Configuration& q) {
    Placement pl;
    pl.translation = q.position;
    if (dim == 2) {
        pl.angle = robot.rotation == RotationTag::Planar ? q.angle : 0.0;
    } else if (robot.rotation == RotationTag::Full3D) {
        pl.rotation = q.orientation;
    }
    return pl;
}

bool is_valid(const Configuration& q, const Environment& env, ValidityCounter& counter) {
    ++counter.cd_calls;
    Placement pl = config_placement(env.robot, env.dim(), q);
    for (const ConvexShape& part : env.robot.parts) {
        if (!boundary_contains(env.geom, part, pl)) return false;
        for (const PlacedShape& ob : env.geom.obstacles)
            if (shapes_intersect(part, pl, ob.shape, ob.placement, env.dim())) return false;
    }
    return true;
}

double distance(const Environment& env, const Configuration& a, const Configuration& b) {
    double d = (a.position - b.position).norm();
    switch (env.robot.rotation) {
        case RotationTag::None:
            break;
        case RotationTag::Planar:
            d += env.robot.circumradius() * std::abs(wrap_angle(a.angle - b.angle));
            break;
        case RotationTag::Full3D:
            d += env.robot.circumradius() * quat_angle(a.orientation, b.orientation);
            break;
    }
    return d;
}

Configuration interpolate(const Environment& env, const Configuration& a,
                          const Configuration& b, double t) {
    if (t <= 0.0) return a;
    if (t >= 1.0) return b;
    Configuration q;
    q.position = a.position + (b.position - a.position) * t;
    if (env.robot.rotation == RotationTag::Planar) {
        q.angle = wrap_angle(a.angle + t * wrap_angle(b.angle - a.angle));
    } else if (env.robot.rotation == RotationTag::Full3D) {
        q.orientation = slerp(a.orientation, b.orientation, t);
    }
    return q;
}

namespace {

int segment_steps(const Environment& env, const Configuration& a, const Configuration& b,
                  double resolution) {
    double d = distance(env, a, b);
    if (d == 0.0) return 0;
    return std::max(1, static_cast<int>(std::ceil(d / resolution)));
}

} // namespace

bool validate_edge(const Configuration& a, const Configuration& b, const Environment& env,
                   double resolution, ValidityCounter& counter) {
    if (resolution <= 0.0) throw std::invalid_argument("validate_edge: resolution must be > 0");
    int n = segment_steps(env, a, b, resolution);
    for (int i = 0; i <= n; ++i) {
        Configuration q = interpolate(env, a, b, n == 0 ? 0.0 : double(i) / n);
        if (!is_valid(q, env, counter)) return false;
    }
    return true;
}

std::optional<Configuration> extend(const Configuration& q_near, const Configuration& q_rand,
                                    const Environment& env, double max_step, double resolution,
                                    ValidityCounter& counter) {
    if (max_step <= 0.0 || resolution <= 0.0)
        throw std::invalid_argument("extend: max_step and resolution must be > 0");
    double d = distance(env, q_near, q_rand);
    if (d == 0.0) return std::nullopt;
    Configuration target =
        d <= max_step ? q_rand : interpolate(env, q_near, q_rand, max_step / d);

    int n = segment_steps(env, q_near, target, resolution);
    int last_valid = 0;
    for (int i = 1; i <= n; ++i) {
        Configuration q = interpolate(env, q_near, target, double(i) / n);
        if (!is_valid(q, env, counter)) break;
        last_valid = i;
    }
    if (last_valid == 0) return std::nullopt;
    return interpolate(env, q_near, target, double(last_valid) / n);
}

Configuration sample_uniform(const Environment& env, Rng& rng) {
    Configuration q;
    for (int i = 0; i < env.dim(); ++i)
        q.position[i] = rng.uniform(env.geom.bmin[i], env.geom.bmax[i]);
    if (env.robot.rotation == RotationTag::Planar) {
        q.angle = rng.uniform_angle();
    } else if (env.robot.rotation == RotationTag::Full3D) {
        q.orientation = rng.uniform_quat();
    }
    return q;
}

Configuration sample_in_ball(const Environment& env, const Vec3& center, double radius, Rng& rng) {
    if (radius <= 0.0) throw std::invalid_argument("sample_in_ball: radius must be > 0");
    Configuration q;
    q.position = rng.in_ball(center, radius, env.dim());
    for (int i = 0; i < env.dim(); ++i)
        q.position[i] = std::clamp(q.position[i], env.geom.bmin[i], env.geom.bmax[i]);
    if (env.robot.rotation == RotationTag::Planar) {
        q.angle = rng.uniform_angle();
    } else if (env.robot.rotation == RotationTag::Full3D) {
        q.orientation = rng.uniform_quat();
    }
    return q;
}

int nearest_neighbor(const Environment& env, const TreeRoadmap& tree, const Configuration& q) {
    if (tree.size() == 0) throw std::invalid_argument("nearest_neighbor: empty tree");
    int best = 0;
    double best_d = distance(env, tree.configs[0], q);
    for (int i = 1; i < tree.size(); ++i) {
        double d = distance(env, tree.configs[i], q);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

} // namespace skelplan
