#pragma once

#include <span>
#include <utility>
#include <vector>

#include "flowmap/geo.hpp"

namespace flowmap {

struct GaussianPass {
    int iterations = 0;
    double weight = 0.0;

    friend bool operator==(const GaussianPass&, const GaussianPass&) = default;
};

// Interleaved as G, CR, G, CR, ..., G, followed by uniform resampling.
struct SmoothingSchedule {
    std::vector<GaussianPass> gaussian_passes{{15, 0.55}, {10, 0.45}, {8, 0.35}, {4, 0.25}};
    std::vector<int> spline_densities{10, 8, 4};
    int final_point_count = 100;

    // Throws ConfigError on a malformed schedule.
    void validate() const;

    friend bool operator==(const SmoothingSchedule&, const SmoothingSchedule&) = default;
};

// `iterations` synchronous rounds of p_i <- (1-w) p_i + w (p_{i-1} + p_{i+1}) / 2
// over interior points. Fewer than 3 points are returned unchanged.
std::vector<GridPoint> gaussian_pass(std::vector<GridPoint> points, int iterations, double weight);

// Centripetal Catmull-Rom through every input point with `density` samples per
// segment: (n - 1) * density + 1 output points. End segments use duplicated
// endpoints as phantom controls.
std::vector<GridPoint> catmull_rom_pass(std::span<const GridPoint> points, int density);

// `count` points at equal arc-length spacing; endpoints copied exactly.
// Throws GeometryError("degenerate path") for zero total length.
std::vector<GridPoint> resample_uniform(std::span<const GridPoint> points, int count);

std::vector<GridPoint> smooth_pipeline(std::span<const GridPoint> points, const SmoothingSchedule& schedule = {});

double polyline_length(std::span<const GridPoint> points);

}  // namespace flowmap
