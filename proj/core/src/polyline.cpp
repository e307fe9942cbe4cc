#include "flowmap/polyline.hpp"

namespace flowmap {

std::string_view to_string(FlowClass c) {
    switch (c) {
        case FlowClass::Long: return "long";
        case FlowClass::Short: return "short";
        case FlowClass::Bypass: return "bypass";
        case FlowClass::Excluded: return "excluded";
    }
    return "unknown";
}

std::optional<FlowClass> flow_class_from_string(std::string_view s) {
    for (auto c : {FlowClass::Long, FlowClass::Short, FlowClass::Bypass, FlowClass::Excluded}) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

std::vector<GridPoint> subdivide(const GridPoint& from, const GridPoint& to, int k) {
    std::vector<GridPoint> pts(static_cast<std::size_t>(k) + 1);
    pts.front() = from;
    for (int i = 1; i < k; ++i) {
        const double t = static_cast<double>(i) / k;
        pts[i] = from + (to - from) * t;
    }
    pts.back() = to;
    return pts;
}

}  // namespace flowmap
