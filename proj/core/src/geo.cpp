#include "flowmap/geo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "flowmap/error.hpp"

namespace flowmap {

bool is_valid(const GeoPoint& p) {
    return std::isfinite(p.lon) && std::isfinite(p.lat) && p.lon >= -180.0 && p.lon <= 180.0 &&
           p.lat >= -90.0 && p.lat <= 90.0;
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
    const double phi1 = deg_to_rad(a.lat);
    const double phi2 = deg_to_rad(b.lat);
    const double dphi = phi2 - phi1;
    const double dlambda = deg_to_rad(b.lon - a.lon);
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlambda / 2.0);
    const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0)));
}

double bearing_deg(const GeoPoint& origin, const GeoPoint& dest) {
    if (origin == dest) {
        throw GeometryError("degenerate edge");
    }
    const double phi1 = deg_to_rad(origin.lat);
    const double phi2 = deg_to_rad(dest.lat);
    const double dlambda = deg_to_rad(dest.lon - origin.lon);
    const double y = std::sin(dlambda) * std::cos(phi2);
    const double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dlambda);
    double deg = rad_to_deg(std::atan2(y, x));
    if (deg < 0.0) {
        deg += 360.0;
    }
    // -tiny + 360 rounds to 360
    if (deg >= 360.0) {
        deg = 0.0;
    }
    return deg;
}

GridMapping::GridMapping(GeoBounds bounds, int resolution) : bounds_(bounds), resolution_(resolution) {
    if (!(bounds.min_lon < bounds.max_lon) || !(bounds.min_lat < bounds.max_lat)) {
        throw GeometryError("grid mapping requires min < max on both axes");
    }
    if (resolution < 8) {
        throw GeometryError("grid resolution must be at least 8, got " + std::to_string(resolution));
    }
}

GridMapping GridMapping::fit(std::span<const GeoPoint> points, int resolution, double margin_frac) {
    if (points.empty()) {
        throw GeometryError("cannot fit a grid mapping to zero points");
    }
    GeoBounds b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& p : points) {
        b.min_lon = std::min(b.min_lon, p.lon);
        b.max_lon = std::max(b.max_lon, p.lon);
        b.min_lat = std::min(b.min_lat, p.lat);
        b.max_lat = std::max(b.max_lat, p.lat);
    }
    auto widen = [](double& lo, double& hi) {
        if (hi - lo <= 0.0) {
            lo -= 0.5;
            hi += 0.5;
        }
    };
    widen(b.min_lon, b.max_lon);
    widen(b.min_lat, b.max_lat);
    const double mx = (b.max_lon - b.min_lon) * margin_frac;
    const double my = (b.max_lat - b.min_lat) * margin_frac;
    b.min_lon -= mx;
    b.max_lon += mx;
    b.min_lat -= my;
    b.max_lat += my;
    return GridMapping(b, resolution);
}

bool GridMapping::in_bounds(const GeoPoint& p) const {
    return p.lon >= bounds_.min_lon && p.lon < bounds_.max_lon && p.lat >= bounds_.min_lat &&
           p.lat < bounds_.max_lat;
}

GridPoint GridMapping::project(const GeoPoint& p) const {
    const double res = resolution_;
    const double x = (p.lon - bounds_.min_lon) / (bounds_.max_lon - bounds_.min_lon) * res;
    const double y = (p.lat - bounds_.min_lat) / (bounds_.max_lat - bounds_.min_lat) * res;
    const double hi = std::nextafter(res, 0.0);
    return {std::clamp(x, 0.0, hi), std::clamp(y, 0.0, hi)};
}

GeoPoint GridMapping::unproject(const GridPoint& g) const {
    const double res = resolution_;
    return {bounds_.min_lon + g.x / res * (bounds_.max_lon - bounds_.min_lon),
            bounds_.min_lat + g.y / res * (bounds_.max_lat - bounds_.min_lat)};
}

}  // namespace flowmap
