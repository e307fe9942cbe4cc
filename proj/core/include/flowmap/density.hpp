#pragma once

#include <span>

#include "flowmap/geo.hpp"
#include "flowmap/grid.hpp"
#include "flowmap/ingest.hpp"

namespace flowmap {

// Straight edge in grid coordinates carrying its volume weight.
struct WeightedSegment {
    GridPoint from;
    GridPoint to;
    double weight = 1.0;
};

// Gaussian-splatted edge density sampled at cell centers.
struct DensityField {
    Grid<double> values;
    double sigma = 1.5;
    int samples_per_edge = 11;

    double max_value() const;
};

// Splats beyond this many sigma are dropped; exp(-24.5) keeps the truncation
// error per sample below 3e-11 of the edge weight.
inline constexpr double kKernelCutoffSigma = 7.0;

// D(x,y) = sum_e sum_i w_e * exp(-|p_i^e - (x,y)|^2 / (2 sigma^2)) with
// `samples_per_edge` points spaced uniformly from `from` to `to` (both
// included). Throws GeometryError("no edges") on empty input.
DensityField build_density_field(std::span<const WeightedSegment> segments, int resolution, double sigma,
                                 int samples_per_edge);

// Flows projected through `mapping`, weighted by order_count.
DensityField build_density_field(std::span<const FlowEdge> flows, const GridMapping& mapping, double sigma,
                                 int samples_per_edge);

}  // namespace flowmap
