#include "skelplan/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

namespace skelplan {

namespace {

const double kPositionTol = 1e-9;

std::string edge_name(const SkeletonEdge& e) {
    return "edge " + std::to_string(e.source) + "-" + std::to_string(e.target);
}

} // namespace

bool WorkspaceSkeleton::annotated() const {
    for (const auto& [id, v] : vertices)
        if (v.clearance < 0.0) return false;
    for (const SkeletonEdge& e : edges)
        if (e.min_clearance < 0.0) return false;
    return !vertices.empty();
}

void WorkspaceSkeleton::validate() const {
    for (const auto& [id, v] : vertices) {
        if (!all_finite(v.position))
            throw std::invalid_argument("vertex " + std::to_string(id) + ": position not finite");
    }
    for (const SkeletonEdge& e : edges) {
        auto s = vertices.find(e.source);
        auto t = vertices.find(e.target);
        if (s == vertices.end() || t == vertices.end())
            throw std::invalid_argument(edge_name(e) + ": endpoint vertex missing");
        if (e.intermediates.size() < 2)
            throw std::invalid_argument(edge_name(e) + ": needs at least two intermediates");
        if (distance(e.intermediates.front(), s->second.position) > kPositionTol)
            throw std::invalid_argument(edge_name(e) +
                                        ": intermediates must start at the source position");
        if (distance(e.intermediates.back(), t->second.position) > kPositionTol)
            throw std::invalid_argument(edge_name(e) +
                                        ": intermediates must end at the target position");
        if (intermediate_spacing > 0.0) {
            for (size_t i = 1; i < e.intermediates.size(); ++i) {
                double gap = distance(e.intermediates[i - 1], e.intermediates[i]);
                if (gap > intermediate_spacing + kPositionTol)
                    throw std::invalid_argument(edge_name(e) + ": intermediate gap " +
                                                std::to_string(gap) + " exceeds spacing " +
                                                std::to_string(intermediate_spacing));
            }
        }
    }
}

std::vector<Vec3> straight_intermediates(const Vec3& a, const Vec3& b, double spacing) {
    if (spacing <= 0.0) throw std::invalid_argument("intermediate spacing must be > 0");
    double len = distance(a, b);
    int n = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    std::vector<Vec3> pts;
    pts.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        double t = double(i) / n;
        pts.push_back(i == n ? b : a + (b - a) * t);
    }
    return pts;
}

namespace {

double edge_min_clearance(const SkeletonEdge& e, const EnvironmentGeometry& env) {
    double m = std::numeric_limits<double>::infinity();
    for (const Vec3& p : e.intermediates) m = std::min(m, clearance_or_zero(p, env));
    return m;
}

} // namespace

WorkspaceSkeleton annotate_clearance_serial(const WorkspaceSkeleton& skel,
                                            const EnvironmentGeometry& env) {
    WorkspaceSkeleton out = skel;
    for (auto& [id, v] : out.vertices) v.clearance = clearance_or_zero(v.position, env);
    for (SkeletonEdge& e : out.edges) e.min_clearance = edge_min_clearance(e, env);
    return out;
}

WorkspaceSkeleton annotate_clearance(const WorkspaceSkeleton& skel,
                                     const EnvironmentGeometry& env) {
    WorkspaceSkeleton out = skel;
    std::vector<SkeletonVertex*> verts;
    verts.reserve(out.vertices.size());
    for (auto& [id, v] : out.vertices) verts.push_back(&v);

#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(verts.size()); ++i)
        verts[i]->clearance = clearance_or_zero(verts[i]->position, env);

#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(out.edges.size()); ++i)
        out.edges[i].min_clearance = edge_min_clearance(out.edges[i], env);

    return out;
}

int nearest_skeleton_vertex(const WorkspaceSkeleton& skel, const Vec3& p) {
    if (skel.empty()) throw std::invalid_argument("nearest_skeleton_vertex: empty skeleton");
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& [id, v] : skel.vertices) {
        double d = distance(v.position, p);
        if (d < best_d) {
            best_d = d;
            best = id;
        }
    }
    return best;
}

DirectedQuerySkeleton direct_and_prune(const WorkspaceSkeleton& skel, const Vec3& start,
                                       const Vec3& goal) {
    if (skel.empty()) throw std::invalid_argument("direct_and_prune: empty skeleton");

    int vs = nearest_skeleton_vertex(skel, start);
    int vg = nearest_skeleton_vertex(skel, goal);

    std::map<int, std::vector<int>> adjacency; // vertex -> incident edge indices
    for (size_t i = 0; i < skel.edges.size(); ++i) {
        adjacency[skel.edges[i].source].push_back(static_cast<int>(i));
        adjacency[skel.edges[i].target].push_back(static_cast<int>(i));
    }

    auto bfs_levels = [&](int root) {
        std::map<int, int> level;
        level[root] = 0;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            auto it = adjacency.find(u);
            if (it == adjacency.end()) continue;
            for (int ei : it->second) {
                const SkeletonEdge& e = skel.edges[ei];
                int v = e.source == u ? e.target : e.source;
                if (!level.count(v)) {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        return level;
    };

    std::map<int, int> hop_s = bfs_levels(vs);
    std::map<int, int> hop_g = bfs_levels(vg);
    if (!hop_s.count(vg))
        throw NoGuidanceError("no skeleton guidance: start- and goal-nearest vertices "
                              "are disconnected");

    DirectedQuerySkeleton out;
    out.dim = skel.dim;
    out.intermediate_spacing = skel.intermediate_spacing;
    out.source = vs;
    out.sink = vg;

    if (vs == vg) {
        out.vertices[vs] = skel.vertices.at(vs);
        return out;
    }

    // Orient by hop level from vs; equal-level edges are discarded.
    std::vector<DirectedEdge> directed;
    for (const SkeletonEdge& e : skel.edges) {
        if (!hop_s.count(e.source) || !hop_s.count(e.target)) continue;
        if (!hop_g.count(e.source) || !hop_g.count(e.target)) continue;
        int ls = hop_s.at(e.source), lt = hop_s.at(e.target);
        if (ls == lt) continue;
        DirectedEdge d;
        d.min_clearance = e.min_clearance;
        if (lt == ls + 1) {
            d.source = e.source;
            d.target = e.target;
            d.intermediates = e.intermediates;
        } else {
            d.source = e.target;
            d.target = e.source;
            d.intermediates.assign(e.intermediates.rbegin(), e.intermediates.rend());
        }
        directed.push_back(std::move(d));
    }

    // Keep only edges lying on some vs -> vg directed path.
    std::map<int, std::vector<int>> fwd, bwd;
    for (size_t i = 0; i < directed.size(); ++i) {
        fwd[directed[i].source].push_back(static_cast<int>(i));
        bwd[directed[i].target].push_back(static_cast<int>(i));
    }
    auto reach = [&](int root, const std::map<int, std::vector<int>>& next, bool forward) {
        std::set<int> seen{root};
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            auto it = next.find(u);
            if (it == next.end()) continue;
            for (int ei : it->second) {
                int v = forward ? directed[ei].target : directed[ei].source;
                if (seen.insert(v).second) queue.push_back(v);
            }
        }
        return seen;
    };
    std::set<int> from_source = reach(vs, fwd, true);
    std::set<int> to_sink = reach(vg, bwd, false);

    for (DirectedEdge& d : directed) {
        if (from_source.count(d.source) && to_sink.count(d.target)) {
            int idx = static_cast<int>(out.edges.size());
            out.out_edges[d.source].push_back(idx);
            out.vertices[d.source] = skel.vertices.at(d.source);
            out.vertices[d.target] = skel.vertices.at(d.target);
            out.edges.push_back(std::move(d));
        }
    }

    if (out.vertices.empty() || !out.vertices.count(vs) || !out.vertices.count(vg))
        throw NoGuidanceError("no skeleton guidance: pruning left no start-to-goal path");

    return out;
}

} // namespace skelplan
