#include "flowmap/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "flowmap/error.hpp"

namespace flowmap {

int sector_index(double bearing) {
    const int s = static_cast<int>(std::floor(bearing / kSectorWidthDeg));
    return std::clamp(s, 0, kSectorCount - 1);
}

std::vector<DirectionalCluster> build_clusters(std::span<const FlowEdge> flows) {
    std::map<std::pair<std::string, int>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < flows.size(); ++i) {
        const auto& f = flows[i];
        const int sector = sector_index(bearing_deg(f.origin, f.dest_centroid));
        groups[{f.origin_warehouse, sector}].push_back(i);
    }
    std::vector<DirectionalCluster> out;
    out.reserve(groups.size());
    for (auto& [key, members] : groups) {
        out.push_back({key.first, key.second, std::move(members), {}});
    }
    return out;
}

double cohesion_factor(int t, int total_iterations, double max_strength) {
    if (total_iterations <= 0) return 0.0;
    const int tc = std::clamp(t, 0, total_iterations);
    return max_strength * static_cast<double>(tc) / total_iterations;
}

void update_centroids(std::span<DirectionalCluster> clusters, std::span<const ControlPolyline> polylines) {
    for (auto& c : clusters) {
        if (c.members.empty()) {
            c.centroid_polyline.clear();
            continue;
        }
        const std::size_t n = polylines[c.members.front()].points.size();
        std::vector<GridPoint> sum(n);
        for (std::size_t m : c.members) {
            const auto& pts = polylines[m].points;
            if (pts.size() != n) {
                throw GeometryError("cluster members have mismatched control counts");
            }
            for (std::size_t i = 0; i < n; ++i) sum[i] += pts[i];
        }
        const double inv = 1.0 / static_cast<double>(c.members.size());
        for (auto& p : sum) p = p * inv;
        c.centroid_polyline = std::move(sum);
    }
}

void cohesion_step(std::span<ControlPolyline> polylines, std::span<DirectionalCluster> clusters, int t,
                   int total_iterations, const CohesionParams& params) {
    update_centroids(clusters, polylines);
    const double c = cohesion_factor(t, total_iterations, params.max_strength);
    const double w = params.neighbour_weight;
    std::vector<GridPoint> before;
    for (const auto& cluster : clusters) {
        for (std::size_t m : cluster.members) {
            auto& poly = polylines[m];
            auto& pts = poly.points;
            if (pts.size() < 3) continue;
            switch (poly.flow_class) {
                case FlowClass::Long:
                    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
                        pts[i] += (cluster.centroid_polyline[i] - pts[i]) * c;
                    }
                    break;
                case FlowClass::Short:
                case FlowClass::Bypass:
                    before = pts;
                    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
                        const GridPoint mid = (before[i - 1] + before[i + 1]) * 0.5;
                        pts[i] += (mid - before[i]) * w;
                    }
                    break;
                case FlowClass::Excluded:
                    break;
            }
        }
    }
}

}  // namespace flowmap
