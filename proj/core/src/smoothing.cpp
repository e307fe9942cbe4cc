#include "flowmap/smoothing.hpp"

#include <algorithm>
#include <cmath>

#include "flowmap/error.hpp"

namespace flowmap {

void SmoothingSchedule::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(std::string("invalid smoothing schedule: ") + what);
    };
    require(!gaussian_passes.empty(), "at least one gaussian pass is required");
    require(gaussian_passes.size() == spline_densities.size() + 1,
            "gaussian passes must number one more than spline passes");
    for (std::size_t i = 0; i < gaussian_passes.size(); ++i) {
        const auto& g = gaussian_passes[i];
        require(g.iterations >= 0, "gaussian iterations must be non-negative");
        require(g.weight > 0.0 && g.weight < 1.0, "gaussian weights must lie in (0, 1)");
        if (i > 0) require(g.weight < gaussian_passes[i - 1].weight, "gaussian weights must strictly decrease");
    }
    for (int d : spline_densities) require(d >= 2, "spline densities must be >= 2");
    require(final_point_count >= 2, "final_point_count must be >= 2");
}

double polyline_length(std::span<const GridPoint> points) {
    double len = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) len += distance(points[i - 1], points[i]);
    return len;
}

std::vector<GridPoint> gaussian_pass(std::vector<GridPoint> points, int iterations, double weight) {
    if (points.size() < 3) return points;
    std::vector<GridPoint> prev(points.size());
    for (int it = 0; it < iterations; ++it) {
        prev = points;
        for (std::size_t i = 1; i + 1 < points.size(); ++i) {
            const GridPoint mid = (prev[i - 1] + prev[i + 1]) * 0.5;
            points[i] = prev[i] * (1.0 - weight) + mid * weight;
        }
    }
    return points;
}

namespace {

// Centripetal knot spacing |b - a|^0.5.
double knot_interval(const GridPoint& a, const GridPoint& b) { return std::sqrt(distance(a, b)); }

}  // namespace

std::vector<GridPoint> catmull_rom_pass(std::span<const GridPoint> points, int density) {
    const std::size_t n = points.size();
    if (n < 2 || density < 1) return {points.begin(), points.end()};

    std::vector<GridPoint> out;
    out.reserve((n - 1) * static_cast<std::size_t>(density) + 1);
    for (std::size_t seg = 0; seg + 1 < n; ++seg) {
        const GridPoint& p0 = points[seg == 0 ? 0 : seg - 1];
        const GridPoint& p1 = points[seg];
        const GridPoint& p2 = points[seg + 1];
        const GridPoint& p3 = points[seg + 2 < n ? seg + 2 : n - 1];

        out.push_back(p1);
        double dt1 = knot_interval(p1, p2);
        if (!(dt1 > 0.0)) {
            // coincident controls: the segment is a point
            for (int j = 1; j < density; ++j) out.push_back(p1);
            continue;
        }
        double dt0 = knot_interval(p0, p1);
        double dt2 = knot_interval(p2, p3);
        // A duplicated phantom gives a zero interval; borrow the segment's own.
        if (!(dt0 > 0.0)) dt0 = dt1;
        if (!(dt2 > 0.0)) dt2 = dt1;

        // Hermite tangents of the non-uniform Catmull-Rom, scaled to [0, 1].
        const GridPoint m1 = ((p1 - p0) * (1.0 / dt0) - (p2 - p0) * (1.0 / (dt0 + dt1)) + (p2 - p1) * (1.0 / dt1)) * dt1;
        const GridPoint m2 = ((p2 - p1) * (1.0 / dt1) - (p3 - p1) * (1.0 / (dt1 + dt2)) + (p3 - p2) * (1.0 / dt2)) * dt1;

        for (int j = 1; j < density; ++j) {
            const double u = static_cast<double>(j) / density;
            const double u2 = u * u;
            const double u3 = u2 * u;
            const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
            const double h10 = u3 - 2.0 * u2 + u;
            const double h01 = -2.0 * u3 + 3.0 * u2;
            const double h11 = u3 - u2;
            out.push_back(p1 * h00 + m1 * h10 + p2 * h01 + m2 * h11);
        }
    }
    out.push_back(points.back());
    return out;
}

std::vector<GridPoint> resample_uniform(std::span<const GridPoint> points, int count) {
    if (points.size() < 2 || count < 2) {
        throw GeometryError("degenerate path");
    }
    std::vector<double> cum(points.size(), 0.0);
    for (std::size_t i = 1; i < points.size(); ++i) cum[i] = cum[i - 1] + distance(points[i - 1], points[i]);
    const double total = cum.back();
    if (!(total > 0.0)) {
        throw GeometryError("degenerate path");
    }

    std::vector<GridPoint> out(static_cast<std::size_t>(count));
    out.front() = points.front();
    out.back() = points.back();
    std::size_t seg = 1;
    for (int j = 1; j < count - 1; ++j) {
        const double target = total * static_cast<double>(j) / (count - 1);
        while (seg + 1 < points.size() && cum[seg] < target) ++seg;
        const double seg_len = cum[seg] - cum[seg - 1];
        const double u = seg_len > 0.0 ? (target - cum[seg - 1]) / seg_len : 0.0;
        out[j] = points[seg - 1] + (points[seg] - points[seg - 1]) * std::clamp(u, 0.0, 1.0);
    }
    return out;
}

std::vector<GridPoint> smooth_pipeline(std::span<const GridPoint> points, const SmoothingSchedule& schedule) {
    std::vector<GridPoint> cur(points.begin(), points.end());
    for (std::size_t i = 0; i < schedule.gaussian_passes.size(); ++i) {
        const auto& g = schedule.gaussian_passes[i];
        cur = gaussian_pass(std::move(cur), g.iterations, g.weight);
        if (i < schedule.spline_densities.size()) {
            cur = catmull_rom_pass(cur, schedule.spline_densities[i]);
        }
    }
    return resample_uniform(cur, schedule.final_point_count);
}

}  // namespace flowmap
