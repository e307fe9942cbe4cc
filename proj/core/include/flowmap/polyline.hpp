#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "flowmap/geo.hpp"

namespace flowmap {

// long: > long_km, attracted and pulled toward its cluster.
// short: <= long_km, attracted gently, neighbour-averaged.
// bypass: < bypass_km, never attracted.
// excluded: listed anomaly, drawn as a fixed arc.
enum class FlowClass { Long, Short, Bypass, Excluded };

std::string_view to_string(FlowClass c);
std::optional<FlowClass> flow_class_from_string(std::string_view s);

// k-subdivided flow geometry in grid space; points[0] and points.back() are
// the projected endpoints and never move.
struct ControlPolyline {
    std::size_t flow_index = 0;
    FlowClass flow_class = FlowClass::Long;
    std::vector<GridPoint> points;

    const GridPoint& source() const { return points.front(); }
    const GridPoint& target() const { return points.back(); }
    int subdivisions() const { return static_cast<int>(points.size()) - 1; }
};

// k + 1 evenly spaced points from `from` to `to`, endpoints stored exactly.
std::vector<GridPoint> subdivide(const GridPoint& from, const GridPoint& to, int k);

}  // namespace flowmap
