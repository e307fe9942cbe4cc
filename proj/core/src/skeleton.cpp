#include "flowmap/skeleton.hpp"

#include "flowmap/error.hpp"

namespace flowmap {

std::vector<SkeletonPoint> extract_skeleton(const DistanceField& dist) {
    const auto& d = dist.distance;
    const double max_d = dist.max_distance();
    std::vector<SkeletonPoint> out;
    if (!(max_d > 0.0)) {
        throw GeometryError("degenerate skeleton");
    }
    for (int y = 0; y < d.height(); ++y) {
        for (int x = 0; x < d.width(); ++x) {
            if (!dist.mask(x, y)) continue;
            const double v = d(x, y);
            if (!(v > 0.0)) continue;
            bool is_max = true;
            for (int dy = -1; dy <= 1 && is_max; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if ((dx == 0 && dy == 0) || !d.contains(x + dx, y + dy)) continue;
                    if (d(x + dx, y + dy) > v) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max) {
                out.push_back({GridPoint{x + 0.5, y + 0.5}, v / max_d, x, y});
            }
        }
    }
    if (out.empty()) {
        throw GeometryError("degenerate skeleton");
    }
    return out;
}

SkeletonIndex::SkeletonIndex(std::vector<SkeletonPoint> points, int resolution) : points_(std::move(points)) {
    buckets_per_axis_ = std::max(1, (resolution + kBucketCells - 1) / kBucketCells);
    buckets_.resize(static_cast<std::size_t>(buckets_per_axis_) * buckets_per_axis_);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const int bx = bucket_of(points_[i].pos.x);
        const int by = bucket_of(points_[i].pos.y);
        buckets_[static_cast<std::size_t>(by) * buckets_per_axis_ + bx].push_back(i);
    }
}

}  // namespace flowmap
