#include "flowmap/density.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "flowmap/error.hpp"

namespace flowmap {

double DensityField::max_value() const {
    const auto& d = values.data();
    return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

DensityField build_density_field(std::span<const WeightedSegment> segments, int resolution, double sigma,
                                 int samples_per_edge) {
    if (segments.empty()) {
        throw GeometryError("no edges");
    }
    if (resolution < 1 || !(sigma > 0.0) || samples_per_edge < 2) {
        throw GeometryError("invalid density field parameters");
    }
    DensityField field{Grid<double>(resolution, resolution, 0.0), sigma, samples_per_edge};
    auto& grid = field.values;

    const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
    const double cutoff = kKernelCutoffSigma * sigma;
    const double cutoff_sq = cutoff * cutoff;
    const int n = samples_per_edge - 1;

    // squared per-axis offsets from the sample to each cell center
    std::vector<double> gx;
    std::vector<double> gy;
    for (const auto& seg : segments) {
        for (int i = 0; i <= n; ++i) {
            const double t = static_cast<double>(i) / n;
            const GridPoint p = seg.from + (seg.to - seg.from) * t;
            const int x0 = std::max(0, static_cast<int>(std::floor(p.x - cutoff - 0.5)));
            const int x1 = std::min(resolution - 1, static_cast<int>(std::ceil(p.x + cutoff - 0.5)));
            const int y0 = std::max(0, static_cast<int>(std::floor(p.y - cutoff - 0.5)));
            const int y1 = std::min(resolution - 1, static_cast<int>(std::ceil(p.y + cutoff - 0.5)));
            if (x0 > x1 || y0 > y1) continue;
            gx.resize(static_cast<std::size_t>(x1 - x0 + 1));
            gy.resize(static_cast<std::size_t>(y1 - y0 + 1));
            for (int x = x0; x <= x1; ++x) {
                const double dx = x + 0.5 - p.x;
                gx[x - x0] = dx * dx;
            }
            for (int y = y0; y <= y1; ++y) {
                const double dy = y + 0.5 - p.y;
                gy[y - y0] = dy * dy;
            }
            for (int y = y0; y <= y1; ++y) {
                const double dy2 = gy[y - y0];
                for (int x = x0; x <= x1; ++x) {
                    const double d2 = gx[x - x0] + dy2;
                    if (d2 > cutoff_sq) continue;
                    grid(x, y) += seg.weight * std::exp(-d2 * inv_two_sigma_sq);
                }
            }
        }
    }
    return field;
}

DensityField build_density_field(std::span<const FlowEdge> flows, const GridMapping& mapping, double sigma,
                                  int samples_per_edge) {
    std::vector<WeightedSegment> segments;
    segments.reserve(flows.size());
    for (const auto& f : flows) {
        segments.push_back({mapping.project(f.origin), mapping.project(f.dest_centroid),
                            static_cast<double>(f.order_count)});
    }
    return build_density_field(segments, mapping.resolution(), sigma, samples_per_edge);
}

}  // namespace flowmap
