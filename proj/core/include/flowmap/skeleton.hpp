#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "flowmap/edt.hpp"
#include "flowmap/geo.hpp"

namespace flowmap {

struct SkeletonPoint {
    GridPoint pos;            // cell center
    double importance = 0.0;  // distance / max distance, in (0, 1]
    int cell_x = 0;
    int cell_y = 0;
};

// Masked cells with positive distance that are >= all 8 neighbours, in
// y-major cell order. Throws GeometryError("degenerate skeleton") when none.
std::vector<SkeletonPoint> extract_skeleton(const DistanceField& dist);

// Axis-aligned search window in grid coordinates.
struct SearchBox {
    double min_x = -std::numeric_limits<double>::infinity();
    double min_y = -std::numeric_limits<double>::infinity();
    double max_x = std::numeric_limits<double>::infinity();
    double max_y = std::numeric_limits<double>::infinity();
};

// Uniform bucket grid over skeleton points for nearest-accepted lookups.
class SkeletonIndex {
public:
    static constexpr int kBucketCells = 4;

    SkeletonIndex(std::vector<SkeletonPoint> points, int resolution);

    const std::vector<SkeletonPoint>& points() const { return points_; }
    bool empty() const { return points_.empty(); }

    // Nearest point inside `box` for which accept(point) holds. Ties in
    // distance go to the smaller y-major cell index. Returns nullptr when no
    // point qualifies.
    template <typename Accept>
    const SkeletonPoint* nearest(const GridPoint& p, const SearchBox& box, Accept&& accept) const;

private:
    std::vector<SkeletonPoint> points_;
    int buckets_per_axis_ = 0;
    std::vector<std::vector<std::size_t>> buckets_;

    int bucket_of(double v) const {
        return std::clamp(static_cast<int>(std::floor(v / kBucketCells)), 0, buckets_per_axis_ - 1);
    }
};

template <typename Accept>
const SkeletonPoint* SkeletonIndex::nearest(const GridPoint& p, const SearchBox& box, Accept&& accept) const {
    if (points_.empty()) return nullptr;
    const int bx0 = bucket_of(std::max(box.min_x, 0.0));
    const int by0 = bucket_of(std::max(box.min_y, 0.0));
    const int bx1 = bucket_of(std::min(box.max_x, static_cast<double>(buckets_per_axis_ * kBucketCells)));
    const int by1 = bucket_of(std::min(box.max_y, static_cast<double>(buckets_per_axis_ * kBucketCells)));
    if (bx0 > bx1 || by0 > by1) return nullptr;

    const int qx = bucket_of(p.x);
    const int qy = bucket_of(p.y);
    const bool inside_bucket = p.x >= qx * kBucketCells && p.x < (qx + 1) * kBucketCells &&
                               p.y >= qy * kBucketCells && p.y < (qy + 1) * kBucketCells;
    const int rmax = std::max({qx - bx0, bx1 - qx, qy - by0, by1 - qy, 0});

    const SkeletonPoint* best = nullptr;
    std::size_t best_idx = 0;
    double best_d2 = std::numeric_limits<double>::infinity();

    auto visit = [&](int bx, int by) {
        if (bx < bx0 || bx > bx1 || by < by0 || by > by1) return;
        const double rx0 = bx * kBucketCells;
        const double ry0 = by * kBucketCells;
        const double ddx = std::max({rx0 - p.x, 0.0, p.x - (rx0 + kBucketCells)});
        const double ddy = std::max({ry0 - p.y, 0.0, p.y - (ry0 + kBucketCells)});
        if (ddx * ddx + ddy * ddy > best_d2) return;
        for (std::size_t idx : buckets_[static_cast<std::size_t>(by) * buckets_per_axis_ + bx]) {
            const SkeletonPoint& s = points_[idx];
            if (s.pos.x < box.min_x || s.pos.x > box.max_x || s.pos.y < box.min_y || s.pos.y > box.max_y) continue;
            const double d2 = (s.pos - p).norm_sq();
            if (d2 > best_d2 || (d2 == best_d2 && best != nullptr && idx > best_idx)) continue;
            if (!accept(s)) continue;
            best = &s;
            best_idx = idx;
            best_d2 = d2;
        }
    };

    for (int r = 0; r <= rmax; ++r) {
        if (best != nullptr && inside_bucket && r >= 2) {
            const double lb = static_cast<double>(r - 1) * kBucketCells;
            if (best_d2 < lb * lb) break;
        }
        if (r == 0) {
            visit(qx, qy);
            continue;
        }
        for (int bx = qx - r; bx <= qx + r; ++bx) {
            visit(bx, qy - r);
            visit(bx, qy + r);
        }
        for (int by = qy - r + 1; by <= qy + r - 1; ++by) {
            visit(qx - r, by);
            visit(qx + r, by);
        }
    }
    return best;
}

}  // namespace flowmap
