#pragma once

#include <cstddef>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flowmap/cluster.hpp"
#include "flowmap/edt.hpp"
#include "flowmap/geo.hpp"
#include "flowmap/ingest.hpp"
#include "flowmap/polyline.hpp"
#include "flowmap/skeleton.hpp"

namespace flowmap {

// (warehouse id, region label) pairs that skip attraction and are drawn as arcs.
using ExclusionList = std::set<std::pair<std::string, std::string>>;

ExclusionList default_exclusions();

struct BundleParams {
    int grid_resolution = 128;
    double sigma = 1.5;            // kernel width, grid cells
    int samples_per_edge = 11;     // n + 1
    int subdivisions = 64;         // k; polylines store k + 1 points
    int iterations = 15;           // T
    double alpha = 0.35;
    double tau_long = 0.4;
    double tau_short = 0.15;
    double long_km = 500.0;
    double bypass_km = 300.0;
    double density_threshold_frac = 0.10;
    double forward_dot_min = 0.3;
    double projection_min = -0.1;
    double projection_max = 1.1;
    double long_bonus = 1.2;
    double short_factor = 0.6;
    double cohesion_max = 0.35;
    double short_neighbour_weight = 0.10;
    ExclusionList exclusions = default_exclusions();

    // Throws ConfigError naming the first violated invariant.
    void validate() const;

    double tau_for(FlowClass c) const { return c == FlowClass::Long ? tau_long : tau_short; }
    double class_factor(FlowClass c) const { return c == FlowClass::Long ? long_bonus : short_factor; }

    friend bool operator==(const BundleParams&, const BundleParams&) = default;
};

FlowClass classify_flow(const FlowEdge& flow, const BundleParams& params);

// Relative elongation of s -> skel -> t over s -> t, in grid space.
// Throws GeometryError when s == t.
double detour_ratio(const GridPoint& s, const GridPoint& t, const GridPoint& skel);

// phi(i) = 4 (i/k) (1 - i/k).
double bell_weight(int i, int k);

// Detour, forward-direction and projection checks for moving control point
// `i` of `edge` toward `skel`. Bypass and excluded edges always fail.
bool passes_checks(const ControlPolyline& edge, int i, const SkeletonPoint& skel, const BundleParams& params);

struct AttractionEvent {
    std::size_t flow_index = 0;
    int control_index = 0;
    FlowClass flow_class = FlowClass::Long;
    GridPoint source;
    GridPoint target;
    GridPoint point;
    GridPoint skeleton;
    double importance = 0.0;
};

using AttractionObserver = std::function<void(const AttractionEvent&)>;

struct AttractOptions {
    int workers = 1;
    // Called on the calling thread, in (polyline, control index) order.
    AttractionObserver observer;
};

// One synchronous attraction update over all polylines: each interior point
// moves by alpha * phi(i) * importance * class_factor * (s - p) toward the
// nearest skeleton point passing passes_checks. Returns the number of
// accepted attractions.
std::size_t attract_iteration(std::span<ControlPolyline> polylines, const SkeletonIndex& skeleton,
                              const BundleParams& params, const AttractOptions& options = {});

// Quadratic Bezier from source to target whose control point sits 15% of the
// chord length to the left of the chord midpoint; k + 1 samples.
ControlPolyline render_excluded_arc(const FlowEdge& flow, const GridMapping& mapping, int subdivisions,
                                    std::size_t flow_index = 0);

struct PipelineReport {
    std::size_t flow_count = 0;
    std::map<std::string, std::size_t> class_counts;
    std::size_t cluster_count = 0;
    std::size_t mask_cells = 0;
    std::size_t skeleton_size = 0;
    std::size_t accepted_attractions = 0;
    std::vector<double> iteration_displacement;  // mean |dp| of movable interior points
    double wall_time_ms = 0.0;
};

struct BundleResult {
    GridMapping mapping;
    std::vector<ControlPolyline> polylines;  // one per flow, in input order
    std::vector<DirectionalCluster> clusters;
    std::vector<SkeletonPoint> skeleton;
    PipelineReport report;
};

// Classify, cluster, splat density, EDT, skeleton, then T rounds of
// attraction followed by cohesion. Polylines are returned before smoothing.
BundleResult bundle(std::span<const FlowEdge> flows, const BundleParams& params, const AttractOptions& options = {});

// Runs bundle() on a worker thread; the future is the single completion
// notification.
std::future<BundleResult> bundle_async(std::vector<FlowEdge> flows, BundleParams params, int workers = 1);

}  // namespace flowmap
