#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "flowmap/geo.hpp"
#include "flowmap/ingest.hpp"
#include "flowmap/polyline.hpp"

namespace flowmap {

inline constexpr int kSectorCount = 8;
inline constexpr double kSectorWidthDeg = 360.0 / kSectorCount;

// Half-open 45 degree bins anchored at north: [0,45) -> 0 ... [315,360) -> 7.
int sector_index(double bearing);

struct DirectionalCluster {
    std::string warehouse_id;
    int sector = 0;
    std::vector<std::size_t> members;          // flow indices, ascending
    std::vector<GridPoint> centroid_polyline;  // mean of members' control points
};

// Partition by (origin warehouse, sector of the initial bearing), ordered by
// warehouse id then sector. Throws GeometryError for coincident endpoints.
std::vector<DirectionalCluster> build_clusters(std::span<const FlowEdge> flows);

struct CohesionParams {
    double max_strength = 0.35;     // long flows, reached at t == T
    double neighbour_weight = 0.10;  // short flows
};

// c(t) = max_strength * t / T.
double cohesion_factor(int t, int total_iterations, double max_strength);

// Recomputes every cluster's centroid polyline from `polylines`, indexed by
// flow index. Throws GeometryError if members disagree on control count.
void update_centroids(std::span<DirectionalCluster> clusters, std::span<const ControlPolyline> polylines);

// One synchronous cohesion update. Long members move toward the (pre-step)
// centroid by c(t); short and bypass members move toward the mean of their
// two neighbours by neighbour_weight; excluded members and all endpoints stay.
// Centroids are refreshed from the pre-step positions first.
void cohesion_step(std::span<ControlPolyline> polylines, std::span<DirectionalCluster> clusters, int t,
                   int total_iterations, const CohesionParams& params = {});

}  // namespace flowmap
