#include "skelplan/svg.hpp"

#include <cstdio>
#include <sstream>

namespace skelplan {

namespace {

// Fixed-precision float formatting keeps the output reproducible.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Mapper {
    double scale, ox, oy, height;
    // SVG y axis points down; flip so the scene reads the usual way up.
    std::string x(double wx) const { return fmt((wx - ox) * scale); }
    std::string y(double wy) const { return fmt(height - (wy - oy) * scale); }
};

void polygon_element(std::ostringstream& out, const std::vector<Vec3>& world_pts,
                     const Mapper& m, const std::string& style) {
    out << "  <polygon points=\"";
    for (size_t i = 0; i < world_pts.size(); ++i) {
        if (i) out << ' ';
        out << m.x(world_pts[i].x) << ',' << m.y(world_pts[i].y);
    }
    out << "\" " << style << "/>\n";
}

void line_element(std::ostringstream& out, const Vec3& a, const Vec3& b, const Mapper& m,
                  const std::string& style) {
    out << "  <line x1=\"" << m.x(a.x) << "\" y1=\"" << m.y(a.y) << "\" x2=\"" << m.x(b.x)
        << "\" y2=\"" << m.y(b.y) << "\" " << style << "/>\n";
}

void circle_element(std::ostringstream& out, const Vec3& c, double r_px, const Mapper& m,
                    const std::string& style) {
    out << "  <circle cx=\"" << m.x(c.x) << "\" cy=\"" << m.y(c.y) << "\" r=\"" << fmt(r_px)
        << "\" " << style << "/>\n";
}

} // namespace

std::string render_svg(const Environment& env, const WorkspaceSkeleton* skeleton,
                       const RenderTree* tree) {
    if (env.dim() != 3 && env.dim() != 2)
        throw std::invalid_argument("render_svg: unsupported scene dimension");
    if (env.dim() == 3)
        throw std::invalid_argument(
            "render_svg: 3D scenes are not renderable; project to an axis plane first");

    const double width_px = 800.0;
    double ww = env.geom.bmax.x - env.geom.bmin.x;
    double wh = env.geom.bmax.y - env.geom.bmin.y;
    Mapper m{width_px / ww, env.geom.bmin.x, env.geom.bmin.y, width_px * wh / ww};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width_px) << "\" height=\""
        << fmt(m.height) << "\" viewBox=\"0 0 " << fmt(width_px) << ' ' << fmt(m.height)
        << "\">\n";

    // boundary
    out << "  <rect x=\"0\" y=\"0\" width=\"" << fmt(width_px) << "\" height=\"" << fmt(m.height)
        << "\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";

    // obstacles
    for (const PlacedShape& ob : env.geom.obstacles) {
        std::vector<Vec3> pts;
        for (const Vec3& v : ob.shape.vertices()) pts.push_back(apply_placement(ob.placement, 2, v));
        polygon_element(out, pts, m, "fill=\"#9aa0a6\" stroke=\"#5f6368\" stroke-width=\"1\"");
    }

    // skeleton
    if (skeleton) {
        for (const SkeletonEdge& e : skeleton->edges) {
            for (size_t i = 1; i < e.intermediates.size(); ++i)
                line_element(out, e.intermediates[i - 1], e.intermediates[i], m,
                             "stroke=\"#188038\" stroke-width=\"2\" stroke-dasharray=\"6,4\"");
        }
        for (const auto& [id, v] : skeleton->vertices)
            circle_element(out, v.position, 4.0, m, "fill=\"#188038\"");
    }

    // tree
    if (tree) {
        for (size_t i = 0; i < tree->positions.size(); ++i) {
            int p = i < tree->parents.size() ? tree->parents[i] : -1;
            if (p >= 0)
                line_element(out, tree->positions[p], tree->positions[i], m,
                             "stroke=\"#1a73e8\" stroke-width=\"1\"");
        }
        for (size_t i = 1; i < tree->path.size(); ++i)
            line_element(out, tree->path[i - 1], tree->path[i], m,
                         "stroke=\"#d93025\" stroke-width=\"3\"");
    }

    // start/goal markers
    circle_element(out, env.query.start.position, 6.0, m,
                   "fill=\"#fbbc04\" stroke=\"black\" stroke-width=\"1\"");
    circle_element(out, env.query.goal.position, 6.0, m,
                   "fill=\"#d93025\" stroke=\"black\" stroke-width=\"1\"");

    out << "</svg>\n";
    return out.str();
}

} // namespace skelplan
