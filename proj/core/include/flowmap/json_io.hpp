#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flowmap/bundle.hpp"
#include "flowmap/hexbin.hpp"
#include "flowmap/ingest.hpp"
#include "flowmap/inventory.hpp"

namespace flowmap {

// Output coordinates are rounded to 1e-9 degrees. The rounded value is the
// double nearest its 9-decimal form, so re-reading the JSON is bit-exact.
double quantize_coord(double v);
GeoPoint quantize(const GeoPoint& p);

nlohmann::json to_json(const GeoPoint& p);  // [lon, lat]
nlohmann::json to_json(const FlowEdge& flow);
nlohmann::json to_json(const ExclusionReport& report);
nlohmann::json to_json(const PipelineReport& report, bool include_wall_time = true);
nlohmann::json to_json(const HexBin& bin, double radius_km, std::size_t top_k = 5);

// Nested {label, depth, stock, fraction, children}; fractions are relative
// to `root`.
nlohmann::json sunburst_to_json(const SunburstNode& node, const SunburstNode& root);

// Throws InputError on a malformed flow document.
FlowEdge flow_from_json(const nlohmann::json& j);
std::vector<FlowEdge> flows_from_json(const nlohmann::json& doc);

nlohmann::json flows_to_json(std::span<const FlowEdge> flows);

nlohmann::json read_json_file(const std::filesystem::path& path);

// indent < 0 writes compact JSON. A trailing newline is always added.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc, int indent = -1);

}  // namespace flowmap
