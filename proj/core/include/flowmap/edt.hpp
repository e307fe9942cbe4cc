#pragma once

#include <cstdint>
#include <span>

#include "flowmap/density.hpp"
#include "flowmap/grid.hpp"

namespace flowmap {

// Distance (in cells) from each masked cell to the nearest unmasked cell;
// unmasked cells hold 0.
struct DistanceField {
    Grid<double> distance;
    Grid<std::uint8_t> mask;

    double max_distance() const;
};

// Exact squared-Euclidean transform of one line (lower envelope of
// parabolas). `f` holds 0 at sites and +inf elsewhere or previously computed
// squared distances; the result is written to `out`.
void squared_edt_1d(std::span<const double> f, std::span<double> out);

// Exact two-pass (columns, then rows) EDT of a boolean mask. Throws
// GeometryError when every cell is masked, since no boundary exists.
DistanceField compute_edt(const Grid<std::uint8_t>& mask);

// Masks cells with density strictly above threshold_frac * max(D).
// Throws GeometryError("threshold too high") when nothing qualifies.
DistanceField compute_edt(const DensityField& density, double threshold_frac);

}  // namespace flowmap
