#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flowmap/geo.hpp"
#include "flowmap/ingest.hpp"

namespace flowmap {

struct AxialCoord {
    int q = 0;
    int r = 0;

    friend auto operator<=>(const AxialCoord&, const AxialCoord&) = default;
};

// Pointy-top hexagons of circumradius `radius_km` laid out in an
// equirectangular km frame centred on `origin`.
struct HexGrid {
    double radius_km = 25.0;
    GeoPoint origin;
};

struct HexBin {
    AxialCoord axial;
    GeoPoint center;
    std::int64_t count = 0;
    CategoryHistogram category_hist;
    std::string dominant;
};

struct PlanarKm {
    double x = 0.0;
    double y = 0.0;
};

PlanarKm to_local_km(const GeoPoint& p, const GeoPoint& origin);
GeoPoint from_local_km(const PlanarKm& p, const GeoPoint& origin);

PlanarKm hex_center_km(AxialCoord a, double radius_km);
GeoPoint hex_center(AxialCoord a, const HexGrid& grid);

// Nearest hex center via cube rounding.
AxialCoord hex_assign(const GeoPoint& p, const HexGrid& grid);

// Mean lon/lat of the destinations; (0, 0) for an empty list.
GeoPoint destination_centroid(std::span<const OrderRecord> orders);

// One bin per occupied hex, sorted by (q, r); histograms over category_lvl1.
std::vector<HexBin> hex_binning(std::span<const OrderRecord> orders, const HexGrid& grid);

// Argmax of the histogram, ties to the smallest label.
std::string dominant_category(const CategoryHistogram& hist);

// Up to k (label, count) pairs by count descending, then label ascending.
std::vector<std::pair<std::string, std::int64_t>> top_k_categories(const CategoryHistogram& hist, std::size_t k);
std::vector<std::pair<std::string, std::int64_t>> top_k_categories(const HexBin& bin, std::size_t k);

}  // namespace flowmap
