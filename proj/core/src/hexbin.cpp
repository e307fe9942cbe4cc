#include "flowmap/hexbin.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "flowmap/error.hpp"

namespace flowmap {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

double wrap_lon_delta(double d) {
    while (d > 180.0) d -= 360.0;
    while (d < -180.0) d += 360.0;
    return d;
}

}  // namespace

PlanarKm to_local_km(const GeoPoint& p, const GeoPoint& origin) {
    const double k = deg_to_rad(1.0) * kEarthRadiusKm;
    return {wrap_lon_delta(p.lon - origin.lon) * k * std::cos(deg_to_rad(origin.lat)), (p.lat - origin.lat) * k};
}

GeoPoint from_local_km(const PlanarKm& p, const GeoPoint& origin) {
    const double k = deg_to_rad(1.0) * kEarthRadiusKm;
    double lon = origin.lon + p.x / (k * std::cos(deg_to_rad(origin.lat)));
    if (lon > 180.0) lon -= 360.0;
    if (lon < -180.0) lon += 360.0;
    return {lon, std::clamp(origin.lat + p.y / k, -90.0, 90.0)};
}

PlanarKm hex_center_km(AxialCoord a, double radius_km) {
    return {radius_km * (kSqrt3 * a.q + kSqrt3 / 2.0 * a.r), radius_km * 1.5 * a.r};
}

GeoPoint hex_center(AxialCoord a, const HexGrid& grid) {
    return from_local_km(hex_center_km(a, grid.radius_km), grid.origin);
}

AxialCoord hex_assign(const GeoPoint& p, const HexGrid& grid) {
    if (!(grid.radius_km > 0.0)) {
        throw ConfigError("hex radius must be positive");
    }
    const PlanarKm v = to_local_km(p, grid.origin);
    const double fq = (kSqrt3 / 3.0 * v.x - 1.0 / 3.0 * v.y) / grid.radius_km;
    const double fr = (2.0 / 3.0 * v.y) / grid.radius_km;
    const double fs = -fq - fr;

    double rq = std::round(fq);
    double rr = std::round(fr);
    const double rs = std::round(fs);
    const double dq = std::abs(rq - fq);
    const double dr = std::abs(rr - fr);
    const double ds = std::abs(rs - fs);
    if (dq > dr && dq > ds) {
        rq = -rr - rs;
    } else if (dr > ds) {
        rr = -rq - rs;
    }
    return {static_cast<int>(rq), static_cast<int>(rr)};
}

GeoPoint destination_centroid(std::span<const OrderRecord> orders) {
    if (orders.empty()) return {};
    double lon = 0.0;
    double lat = 0.0;
    for (const auto& o : orders) {
        lon += o.destination.lon;
        lat += o.destination.lat;
    }
    const double n = static_cast<double>(orders.size());
    return {lon / n, lat / n};
}

std::string dominant_category(const CategoryHistogram& hist) {
    std::string best;
    std::int64_t best_n = -1;
    // map iterates labels ascending, so strict > keeps the smallest on ties
    for (const auto& [label, n] : hist) {
        if (n > best_n) {
            best = label;
            best_n = n;
        }
    }
    return best;
}

std::vector<HexBin> hex_binning(std::span<const OrderRecord> orders, const HexGrid& grid) {
    if (!(grid.radius_km > 0.0)) {
        throw ConfigError("hex radius must be positive");
    }
    std::map<AxialCoord, HexBin> bins;
    for (const auto& o : orders) {
        const AxialCoord a = hex_assign(o.destination, grid);
        auto& bin = bins[a];
        bin.axial = a;
        ++bin.count;
        ++bin.category_hist[o.category_lvl1];
    }
    std::vector<HexBin> out;
    out.reserve(bins.size());
    for (auto& [a, bin] : bins) {
        bin.center = hex_center(a, grid);
        bin.dominant = dominant_category(bin.category_hist);
        out.push_back(std::move(bin));
    }
    return out;
}

std::vector<std::pair<std::string, std::int64_t>> top_k_categories(const CategoryHistogram& hist, std::size_t k) {
    std::vector<std::pair<std::string, std::int64_t>> items(hist.begin(), hist.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (items.size() > k) items.resize(k);
    return items;
}

std::vector<std::pair<std::string, std::int64_t>> top_k_categories(const HexBin& bin, std::size_t k) {
    return top_k_categories(bin.category_hist, k);
}

}  // namespace flowmap
