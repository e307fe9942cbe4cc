#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flowmap/bundle.hpp"
#include "flowmap/config.hpp"
#include "flowmap/hexbin.hpp"
#include "flowmap/ingest.hpp"
#include "flowmap/inventory.hpp"

namespace flowmap {

inline constexpr int kManifestVersion = 1;
inline constexpr const char* kAllFilterTag = "all";

// Bundled and straight geometry of one flow in geographic coordinates.
struct FlowGeometry {
    FlowEdge flow;
    FlowClass flow_class = FlowClass::Long;
    std::vector<GeoPoint> straight;  // k + 1 points
    std::vector<GeoPoint> bundled;   // final_point_count points
};

struct CompiledFlows {
    std::vector<FlowGeometry> flows;
    PipelineReport report;
    // Smoothed grid-space paths, kept for endpoint checks.
    std::vector<std::vector<GridPoint>> grid_paths;
    std::vector<std::pair<GridPoint, GridPoint>> grid_endpoints;
};

// bundle() followed by smoothing. Excluded arcs are only resampled. The
// first and last geographic points are the flow's own endpoints.
CompiledFlows compile_flows(std::span<const FlowEdge> flows, const PipelineConfig& config,
                            const AttractOptions& options = {});

struct HexLayer {
    double radius_km = 0.0;
    GeoPoint origin;
    std::vector<HexBin> bins;
};

struct WarehouseSunburst {
    std::string warehouse_id;
    SunburstNode root;
};

struct SceneManifest {
    int version = kManifestVersion;
    std::string filter_tag = kAllFilterTag;
    std::vector<Warehouse> warehouses;
    std::vector<FlowGeometry> flows;
    std::vector<HexLayer> hex_layers;
    std::vector<WarehouseSunburst> sunbursts;
    PipelineReport report;
};

struct SceneInputs {
    std::vector<Warehouse> warehouses;
    RegionCentroidTable regions;
    std::vector<OrderRecord> orders;
    std::vector<InventoryRecord> inventory;
};

// Filter presets: "all" then one per warehouse, in warehouse-file order.
std::vector<std::string> filter_presets(std::span<const Warehouse> warehouses);

// Manifest for one preset. Hex bins share one anchor (the centroid of every
// included destination) across presets so that cells line up.
SceneManifest build_manifest(const SceneInputs& inputs, const std::string& filter_tag, const PipelineConfig& config,
                             const AttractOptions& options = {});

// Wall time is left out so that identical inputs give identical bytes.
nlohmann::json manifest_to_json(const SceneManifest& manifest);

// GeoJSON FeatureCollection with one LineString per flow.
nlohmann::json flows_to_geojson(std::span<const FlowGeometry> flows);

}  // namespace flowmap
