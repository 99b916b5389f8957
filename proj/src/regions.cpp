#include "skelplan/regions.hpp"

#include <algorithm>
#include <stdexcept>

namespace skelplan {

namespace {
// Below this the clearance cap leaves no usable sampling ball and the edge
// is treated as providing no guidance.
const double kMinViableRadius = 1e-9;
} // namespace

double region_weight(const SamplingRegion& r) {
    long long total = r.successes + r.failures;
    if (total == 0) return 1.0;
    return static_cast<double>(r.successes) / static_cast<double>(total);
}

SelectionProbabilities selection_probabilities(const std::vector<double>& weights,
                                               double explore_bias) {
    if (explore_bias < 0.0 || explore_bias > 1.0)
        throw std::invalid_argument("explore bias must lie in [0,1]");
    size_t n = weights.size();
    SelectionProbabilities p;
    double base = explore_bias / static_cast<double>(n + 1);
    p.env = base;
    p.region.assign(n, base);
    double sum = 0.0;
    for (double w : weights) sum += w;
    if (sum > 0.0) {
        for (size_t i = 0; i < n; ++i) p.region[i] += (1.0 - explore_bias) * weights[i] / sum;
    } else {
        p.env += 1.0 - explore_bias;
    }
    return p;
}

int select_region(const std::vector<SamplingRegion>& live, double explore_bias, Rng& rng) {
    if (live.empty()) return -1;
    std::vector<double> weights;
    weights.reserve(live.size());
    for (const SamplingRegion& r : live) weights.push_back(region_weight(r));
    SelectionProbabilities p = selection_probabilities(weights, explore_bias);

    double u = rng.uniform();
    double acc = 0.0;
    for (size_t i = 0; i < live.size(); ++i) {
        acc += p.region[i];
        if (u < acc) return static_cast<int>(i);
    }
    return -1; // environment region sits at the top of the cumulative walk
}

double retract_region(SamplingRegion& r, const Vec3& prev_pos) {
    Vec3 old = r.center;
    r.center = (prev_pos + old) * 0.5;
    return -distance(r.center, old);
}

RegionSet::RegionSet(const DirectedQuerySkeleton* skel, double max_radius,
                     const EnvironmentGeometry* geom, double robot_fit_radius)
    : skel_(skel), max_radius_(max_radius), geom_(geom), robot_fit_radius_(robot_fit_radius) {
    if (skel_) edge_used_.assign(skel_->edges.size(), 0);
}

double RegionSet::capped_radius(int edge_index) const {
    double cap = skel_->edges[edge_index].min_clearance;
    if (cap < 0.0) return max_radius_; // unannotated
    return std::min(max_radius_, cap);
}

bool RegionSet::ball_feasible(const Vec3& center, double radius) const {
    if (!geom_ || robot_fit_radius_ <= 0.0) return true;
    return clearance_or_zero(center, *geom_) + radius >= robot_fit_radius_;
}

int RegionSet::spawn_on_edge(int edge_index) {
    if (edge_used_[edge_index]) return -1;
    edge_used_[edge_index] = 1;
    double radius = capped_radius(edge_index);
    if (radius < kMinViableRadius) return -1;
    const Vec3& start = skel_->edges[edge_index].intermediates.front();
    if (!ball_feasible(start, radius)) return -1;
    SamplingRegion r;
    r.id = next_id_++;
    r.edge = edge_index;
    r.anchor_index = 0;
    r.center = start;
    r.radius = radius;
    live_.push_back(r);
    return r.id;
}

std::vector<int> RegionSet::spawn_at_vertex(int vertex) {
    std::vector<int> ids;
    if (!skel_) return ids;
    auto it = skel_->out_edges.find(vertex);
    if (it == skel_->out_edges.end()) return ids;
    for (int ei : it->second) {
        int id = spawn_on_edge(ei);
        if (id >= 0) ids.push_back(id);
    }
    return ids;
}

AdvanceOutcome RegionSet::advance(int live_index, AdvanceGranularity granularity,
                                  bool reached_end) {
    AdvanceOutcome out;
    SamplingRegion& r = live_[live_index];
    const DirectedEdge& edge = skel_->edges[r.edge];
    int last = static_cast<int>(edge.intermediates.size()) - 1;

    // The tree made it to the skeleton vertex: split into the outgoing edges.
    if (reached_end && r.anchor_index == last) {
        int target = edge.target;
        retired_.push_back(r);
        live_.erase(live_.begin() + live_index);
        out.retired = true;
        out.spawned_region_ids = spawn_at_vertex(target);
        return out;
    }

    if (granularity == AdvanceGranularity::EdgeEnd) {
        r.anchor_index = last;
    } else {
        r.anchor_index = std::min(r.anchor_index + 1, last);
    }
    r.center = edge.intermediates[r.anchor_index];
    r.radius = capped_radius(r.edge);

    // Anchors the robot provably cannot fit around give no guidance; drop
    // the region rather than let it soak up selection mass.
    if (!ball_feasible(r.center, r.radius)) {
        retired_.push_back(r);
        live_.erase(live_.begin() + live_index);
        out.retired = true;
    }
    return out;
}

} // namespace skelplan
