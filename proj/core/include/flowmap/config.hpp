#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flowmap/bundle.hpp"
#include "flowmap/smoothing.hpp"

namespace flowmap {

// Everything the scene compiler needs besides the data itself. Serialized as
// one flat JSON object; keys missing from a document keep their defaults and
// unknown keys are rejected.
struct PipelineConfig {
    BundleParams bundle;
    SmoothingSchedule smoothing;
    std::vector<double> hex_radii_km{10.0, 25.0, 50.0};
    std::string orders_path;
    std::string warehouses_path;
    std::string regions_path;
    std::string inventory_path;

    void validate() const;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

nlohmann::json config_to_json(const PipelineConfig& config);

// Throws ConfigError on unknown keys, wrong types or violated invariants.
PipelineConfig config_from_json(const nlohmann::json& doc);

PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace flowmap
