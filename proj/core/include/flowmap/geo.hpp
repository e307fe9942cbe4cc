#pragma once

#include <cmath>
#include <span>

namespace flowmap {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct GeoPoint {
    double lon = 0.0;  // degrees east, [-180, 180]
    double lat = 0.0;  // degrees north, [-90, 90]

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

bool is_valid(const GeoPoint& p);

// Continuous coordinates on the bundling grid; cell (i, j) covers
// [i, i+1) x [j, j+1) and has its center at (i + 0.5, j + 0.5).
struct GridPoint {
    double x = 0.0;
    double y = 0.0;

    GridPoint operator+(const GridPoint& o) const { return {x + o.x, y + o.y}; }
    GridPoint operator-(const GridPoint& o) const { return {x - o.x, y - o.y}; }
    GridPoint operator*(double s) const { return {x * s, y * s}; }
    GridPoint& operator+=(const GridPoint& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    double dot(const GridPoint& o) const { return x * o.x + y * o.y; }
    double cross(const GridPoint& o) const { return x * o.y - y * o.x; }
    double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm_sq()); }

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

inline double distance(const GridPoint& a, const GridPoint& b) { return (a - b).norm(); }

// Great-circle distance on a sphere of radius kEarthRadiusKm.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

// Initial great-circle bearing in [0, 360), 0 = north, 90 = east.
// Throws GeometryError("degenerate edge") for coincident points.
double bearing_deg(const GeoPoint& origin, const GeoPoint& dest);

struct GeoBounds {
    double min_lon = 0.0;
    double min_lat = 0.0;
    double max_lon = 0.0;
    double max_lat = 0.0;
};

// Equirectangular affine map from a lon/lat box onto [0, resolution)^2.
class GridMapping {
public:
    static constexpr double kDefaultMarginFrac = 0.05;
    static constexpr int kDefaultResolution = 128;

    GridMapping(GeoBounds bounds, int resolution);

    // Bounding box of `points` grown by `margin_frac` of its extent per side.
    // A zero extent on either axis is widened to one degree first.
    static GridMapping fit(std::span<const GeoPoint> points,
                           int resolution = kDefaultResolution,
                           double margin_frac = kDefaultMarginFrac);

    const GeoBounds& bounds() const { return bounds_; }
    int resolution() const { return resolution_; }

    bool in_bounds(const GeoPoint& p) const;

    // Out-of-bounds points are clamped into the grid; check in_bounds()
    // beforehand to detect that.
    GridPoint project(const GeoPoint& p) const;
    GeoPoint unproject(const GridPoint& g) const;

    double cell_width_deg() const { return (bounds_.max_lon - bounds_.min_lon) / resolution_; }
    double cell_height_deg() const { return (bounds_.max_lat - bounds_.min_lat) / resolution_; }

private:
    GeoBounds bounds_;
    int resolution_;
};

}  // namespace flowmap
