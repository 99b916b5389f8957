#ifndef SKELPLAN_REGIONS_HPP
#define SKELPLAN_REGIONS_HPP

#include <vector>

#include "skelplan/rng.hpp"
#include "skelplan/skeleton.hpp"

namespace skelplan {

// Sampling ball anchored to an intermediate of a directed skeleton edge.
struct SamplingRegion {
    int id = -1;
    int edge = -1;         // index into DirectedQuerySkeleton::edges
    int anchor_index = 0;  // index into that edge's intermediates
    Vec3 center;
    double radius = 0.0;
    long long successes = 0;
    long long failures = 0;
};

// successes / (successes + failures); 1.0 while both are zero.
double region_weight(const SamplingRegion& r);

struct SelectionProbabilities {
    double env = 0.0;
    std::vector<double> region;
};

// p_env = e/(|R|+1); p_r = e/(|R|+1) + (1-e) * w_r / sum(w). When every
// weight is zero the exploit mass goes to the environment region.
SelectionProbabilities selection_probabilities(const std::vector<double>& weights,
                                               double explore_bias);

// Draws one region index (or -1 for the whole-environment region) from a
// single uniform variate walked over regions in ascending id order, with
// the environment region last.
int select_region(const std::vector<SamplingRegion>& live, double explore_bias, Rng& rng);

// Moves r.center to the midpoint of prev_pos and the current center.
// Returns the (negative) center displacement. Anchor unchanged.
double retract_region(SamplingRegion& r, const Vec3& prev_pos);

// Result of one advance call.
struct AdvanceOutcome {
    bool retired = false;
    std::vector<int> spawned_region_ids;
};

enum class AdvanceGranularity { EdgeEnd, OneIntermediate };

// Live-region bookkeeping for one planner run. Spawns at most one region
// per directed edge. A region is viable only while its ball could contain
// a valid robot placement: edges whose clearance cap leaves no usable ball
// never get a region, and a region whose anchor moves somewhere the robot
// provably cannot fit (anchor clearance + radius < the robot's fit radius)
// is dropped on the spot.
class RegionSet {
public:
    RegionSet(const DirectedQuerySkeleton* skel, double max_radius,
              const EnvironmentGeometry* geom = nullptr, double robot_fit_radius = 0.0);

    // One fresh region per outgoing edge of `vertex` (subject to the
    // per-edge spawn rule). Returns ids of the regions created.
    std::vector<int> spawn_at_vertex(int vertex);

    // On success: a region whose extension reached the edge-end ball (pass
    // reached_end) retires and splits into the outgoing edges; otherwise
    // its center jumps to the edge end (or steps one intermediate).
    AdvanceOutcome advance(int live_index, AdvanceGranularity granularity, bool reached_end);

    const std::vector<SamplingRegion>& live() const { return live_; }
    const std::vector<SamplingRegion>& retired() const { return retired_; }
    SamplingRegion& live_at(int i) { return live_[i]; }
    bool empty() const { return live_.empty(); }

    // True iff some configuration centered in the ball could be collision
    // free (necessary condition via the robot fit radius).
    bool ball_feasible(const Vec3& center, double radius) const;

private:
    int spawn_on_edge(int edge_index);
    double capped_radius(int edge_index) const;

    const DirectedQuerySkeleton* skel_;
    double max_radius_;
    const EnvironmentGeometry* geom_;
    double robot_fit_radius_;
    std::vector<SamplingRegion> live_;
    std::vector<SamplingRegion> retired_;
    std::vector<char> edge_used_;
    int next_id_ = 0;
};

} // namespace skelplan

#endif
