#include "skelplan/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace skelplan {

bool all_finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

Quat Quat::from_axis_angle(const Vec3& axis, double angle) {
    double n = axis.norm();
    if (n == 0.0) return identity();
    double h = 0.5 * angle;
    double s = std::sin(h) / n;
    return Quat{std::cos(h), axis.x * s, axis.y * s, axis.z * s};
}

Quat Quat::normalized() const {
    double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero quaternion");
    return {w / n, x / n, y / n, z / n};
}

Quat Quat::operator*(const Quat& o) const {
    Quat q{w * o.w - x * o.x - y * o.y - z * o.z,
           w * o.x + x * o.w + y * o.z - z * o.y,
           w * o.y - x * o.z + y * o.w + z * o.x,
           w * o.z + x * o.y - y * o.x + z * o.w};
    if (std::abs(q.norm() - 1.0) > 1e-9) q = q.normalized();
    return q;
}

Vec3 Quat::rotate(const Vec3& v) const {
    // q v q*, expanded.
    Vec3 u{x, y, z};
    Vec3 uv = u.cross(v);
    return v + 2.0 * (w * uv + u.cross(uv));
}

Quat slerp(const Quat& a, const Quat& b_in, double t) {
    Quat b = b_in;
    double d = a.dot(b);
    if (d < 0.0) { // take the short arc
        b = {-b.w, -b.x, -b.y, -b.z};
        d = -d;
    }
    if (d > 1.0 - 1e-12) {
        // nearly parallel: nlerp
        Quat q{a.w + t * (b.w - a.w), a.x + t * (b.x - a.x),
               a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)};
        return q.normalized();
    }
    double theta = std::acos(std::clamp(d, -1.0, 1.0));
    double sa = std::sin((1.0 - t) * theta) / std::sin(theta);
    double sb = std::sin(t * theta) / std::sin(theta);
    return Quat{sa * a.w + sb * b.w, sa * a.x + sb * b.x,
                sa * a.y + sb * b.y, sa * a.z + sb * b.z};
}

double quat_angle(const Quat& a, const Quat& b) {
    double d = std::clamp(std::abs(a.dot(b)), 0.0, 1.0);
    return 2.0 * std::acos(d);
}

namespace {

double cross2(const Vec3& o, const Vec3& a, const Vec3& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Monotone chain hull, counterclockwise.
std::vector<Vec3> hull2d(std::vector<Vec3> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec3& a, const Vec3& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Vec3> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

double polygon_area(const std::vector<Vec3>& v) {
    double a = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const Vec3& p = v[i];
        const Vec3& q = v[(i + 1) % v.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

} // namespace

ConvexShape ConvexShape::box(const Vec3& mn, const Vec3& mx, int dim) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("shape dimension must be 2 or 3");
    for (int i = 0; i < dim; ++i)
        if (!(mn[i] < mx[i]))
            throw std::invalid_argument("degenerate box: min must be strictly below max");
    ConvexShape s;
    s.kind_ = ShapeKind::Box;
    s.dim_ = dim;
    s.box_min_ = mn;
    s.box_max_ = mx;
    if (dim == 2) {
        s.vertices_ = {{mn.x, mn.y}, {mx.x, mn.y}, {mx.x, mx.y}, {mn.x, mx.y}};
    } else {
        for (int i = 0; i < 8; ++i)
            s.vertices_.push_back({(i & 1) ? mx.x : mn.x, (i & 2) ? mx.y : mn.y,
                                   (i & 4) ? mx.z : mn.z});
    }
    return s;
}

ConvexShape ConvexShape::polygon(std::vector<Vec3> vertices) {
    for (const Vec3& v : vertices) {
        if (!all_finite(v)) throw std::invalid_argument("polygon vertex not finite");
        if (v.z != 0.0) throw std::invalid_argument("polygons are 2D; use boxes in 3D scenes");
    }
    std::vector<Vec3> h = hull2d(vertices);
    if (h.size() < 3 || h.size() != vertices.size())
        throw std::invalid_argument("polygon vertices must be in convex position");
    if (polygon_area(h) <= 0.0) throw std::invalid_argument("degenerate polygon: zero area");
    ConvexShape s;
    s.kind_ = ShapeKind::Polygon;
    s.dim_ = 2;
    s.vertices_ = std::move(h);
    return s;
}

double ConvexShape::circumradius() const {
    double r = 0.0;
    for (const Vec3& v : vertices_) r = std::max(r, v.norm());
    return r;
}

Vec3 apply_placement(const Placement& pl, int dim, const Vec3& local) {
    if (dim == 2) {
        double c = std::cos(pl.angle), s = std::sin(pl.angle);
        return {c * local.x - s * local.y + pl.translation.x,
                s * local.x + c * local.y + pl.translation.y, 0.0};
    }
    return pl.rotation.rotate(local) + pl.translation;
}

Vec3 invert_placement(const Placement& pl, int dim, const Vec3& world) {
    Vec3 d = world - pl.translation;
    if (dim == 2) {
        double c = std::cos(pl.angle), s = std::sin(pl.angle);
        return {c * d.x + s * d.y, -s * d.x + c * d.y, 0.0};
    }
    Quat inv{pl.rotation.w, -pl.rotation.x, -pl.rotation.y, -pl.rotation.z};
    return inv.rotate(d);
}

Placement compose_placements(const Placement& outer, const Placement& inner, int dim) {
    Placement r;
    r.translation = apply_placement(outer, dim, inner.translation);
    if (dim == 2) {
        r.angle = outer.angle + inner.angle;
    } else {
        r.rotation = outer.rotation * inner.rotation;
    }
    return r;
}

double EnvironmentGeometry::shortest_side() const {
    double s = bmax.x - bmin.x;
    s = std::min(s, bmax.y - bmin.y);
    if (dim == 3) s = std::min(s, bmax.z - bmin.z);
    return s;
}

bool EnvironmentGeometry::inside_boundary(const Vec3& p) const {
    for (int i = 0; i < dim; ++i)
        if (p[i] < bmin[i] || p[i] > bmax[i]) return false;
    return true;
}

namespace {

struct Interval {
    double lo, hi;
};

Interval project(const std::vector<Vec3>& world_verts, const Vec3& axis) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vec3& v : world_verts) {
        double d = v.dot(axis);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {lo, hi};
}

// Strict gap means separated; touching intervals intersect.
bool separated_on(const std::vector<Vec3>& a, const std::vector<Vec3>& b, const Vec3& axis) {
    Interval ia = project(a, axis);
    Interval ib = project(b, axis);
    return ia.hi < ib.lo || ib.hi < ia.lo;
}

std::vector<Vec3> world_vertices(const ConvexShape& s, const Placement& pl, int dim) {
    std::vector<Vec3> out;
    out.reserve(s.vertices().size());
    for (const Vec3& v : s.vertices()) out.push_back(apply_placement(pl, dim, v));
    return out;
}

void edge_normals_2d(const std::vector<Vec3>& poly, std::vector<Vec3>& axes) {
    for (size_t i = 0; i < poly.size(); ++i) {
        Vec3 e = poly[(i + 1) % poly.size()] - poly[i];
        axes.push_back({-e.y, e.x, 0.0});
    }
}

// Rotated box axes (columns of the rotation matrix).
std::array<Vec3, 3> box_axes(const Placement& pl) {
    return {pl.rotation.rotate({1, 0, 0}), pl.rotation.rotate({0, 1, 0}),
            pl.rotation.rotate({0, 0, 1})};
}

} // namespace

bool shapes_intersect(const ConvexShape& a, const Placement& pa,
                      const ConvexShape& b, const Placement& pb, int dim) {
    if (a.dim() != dim || b.dim() != dim)
        throw std::invalid_argument("shapes_intersect: shape/scene dimension mismatch");

    std::vector<Vec3> wa = world_vertices(a, pa, dim);
    std::vector<Vec3> wb = world_vertices(b, pb, dim);

    if (dim == 2) {
        std::vector<Vec3> axes;
        edge_normals_2d(wa, axes);
        edge_normals_2d(wb, axes);
        for (const Vec3& ax : axes)
            if (separated_on(wa, wb, ax)) return false;
        return true;
    }

    // 3D: boxes only (possibly rotated by their placements).
    if (a.kind() != ShapeKind::Box || b.kind() != ShapeKind::Box)
        throw std::invalid_argument("3D intersection supports boxes only");
    auto axa = box_axes(pa);
    auto axb = box_axes(pb);
    std::vector<Vec3> axes(axa.begin(), axa.end());
    axes.insert(axes.end(), axb.begin(), axb.end());
    for (const Vec3& u : axa)
        for (const Vec3& v : axb) {
            Vec3 c = u.cross(v);
            if (c.norm2() > 1e-18) axes.push_back(c);
        }
    for (const Vec3& ax : axes)
        if (separated_on(wa, wb, ax)) return false;
    return true;
}

bool point_in_placed_shape(const Vec3& p, const ConvexShape& s, const Placement& pl, int dim) {
    Vec3 q = invert_placement(pl, dim, p);
    if (s.kind() == ShapeKind::Box) {
        for (int i = 0; i < dim; ++i)
            if (q[i] < s.box_min()[i] || q[i] > s.box_max()[i]) return false;
        return true;
    }
    const std::vector<Vec3>& v = s.vertices();
    for (size_t i = 0; i < v.size(); ++i) {
        if (cross2(v[i], v[(i + 1) % v.size()], q) < 0.0) return false;
    }
    return true;
}

namespace {

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
    Vec3 ab = b - a;
    double l2 = ab.norm2();
    if (l2 == 0.0) return (p - a).norm();
    double t = std::clamp((p - a).dot(ab) / l2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

} // namespace

double point_to_placed_shape_distance(const Vec3& p, const ConvexShape& s,
                                      const Placement& pl, int dim) {
    Vec3 q = invert_placement(pl, dim, p);
    if (s.kind() == ShapeKind::Box) {
        Vec3 clamped = q;
        bool inside = true;
        for (int i = 0; i < dim; ++i) {
            double c = std::clamp(q[i], s.box_min()[i], s.box_max()[i]);
            if (c != q[i]) inside = false;
            clamped[i] = c;
        }
        return inside ? 0.0 : (q - clamped).norm();
    }
    if (point_in_placed_shape(p, s, pl, dim)) return 0.0;
    const std::vector<Vec3>& v = s.vertices();
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < v.size(); ++i)
        best = std::min(best, point_segment_distance(q, v[i], v[(i + 1) % v.size()]));
    return best;
}

double point_clearance(const Vec3& p, const EnvironmentGeometry& env) {
    if (!env.inside_boundary(p))
        throw std::domain_error("point_clearance: point outside environment boundary");
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < env.dim; ++i) {
        best = std::min(best, p[i] - env.bmin[i]);
        best = std::min(best, env.bmax[i] - p[i]);
    }
    for (const PlacedShape& ob : env.obstacles) {
        best = std::min(best, point_to_placed_shape_distance(p, ob.shape, ob.placement, env.dim));
        if (best == 0.0) break;
    }
    return best;
}

double clearance_or_zero(const Vec3& p, const EnvironmentGeometry& env) {
    if (!env.inside_boundary(p)) return 0.0;
    return point_clearance(p, env);
}

bool boundary_contains(const EnvironmentGeometry& env, const ConvexShape& s,
                       const Placement& pl) {
    for (const Vec3& v : s.vertices()) {
        Vec3 w = apply_placement(pl, env.dim, v);
        if (!env.inside_boundary(w)) return false;
    }
    return true;
}

} // namespace skelplan
