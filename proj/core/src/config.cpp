#include "flowmap/config.hpp"

#include <fstream>
#include <set>

#include "flowmap/error.hpp"

namespace flowmap {

using nlohmann::json;

void PipelineConfig::validate() const {
    bundle.validate();
    smoothing.validate();
    if (hex_radii_km.empty()) throw ConfigError("invalid config: hex_radii_km must not be empty");
    for (double r : hex_radii_km) {
        if (!(r > 0.0)) throw ConfigError("invalid config: hex radii must be positive");
    }
}

json config_to_json(const PipelineConfig& c) {
    const auto& b = c.bundle;
    json exclusions = json::array();
    for (const auto& [wh, region] : b.exclusions) exclusions.push_back({wh, region});
    json gaussian = json::array();
    for (const auto& g : c.smoothing.gaussian_passes) {
        gaussian.push_back({{"iterations", g.iterations}, {"weight", g.weight}});
    }
    return json{
        {"grid_resolution", b.grid_resolution},
        {"sigma", b.sigma},
        {"samples_per_edge", b.samples_per_edge},
        {"subdivisions", b.subdivisions},
        {"iterations", b.iterations},
        {"alpha", b.alpha},
        {"tau_long", b.tau_long},
        {"tau_short", b.tau_short},
        {"long_km", b.long_km},
        {"bypass_km", b.bypass_km},
        {"density_threshold_frac", b.density_threshold_frac},
        {"forward_dot_min", b.forward_dot_min},
        {"projection_min", b.projection_min},
        {"projection_max", b.projection_max},
        {"long_bonus", b.long_bonus},
        {"short_factor", b.short_factor},
        {"cohesion_max", b.cohesion_max},
        {"short_neighbour_weight", b.short_neighbour_weight},
        {"exclusions", exclusions},
        {"gaussian_passes", gaussian},
        {"spline_densities", c.smoothing.spline_densities},
        {"final_point_count", c.smoothing.final_point_count},
        {"hex_radii_km", c.hex_radii_km},
        {"orders", c.orders_path},
        {"warehouses", c.warehouses_path},
        {"regions", c.regions_path},
        {"inventory", c.inventory_path},
    };
}

namespace {

template <typename T>
void read(const json& doc, const char* key, T& out) {
    const auto it = doc.find(key);
    if (it == doc.end()) return;
    try {
        if constexpr (std::is_same_v<T, int>) {
            if (!it->is_number_integer()) throw ConfigError("");
        } else if constexpr (std::is_same_v<T, double>) {
            if (!it->is_number()) throw ConfigError("");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!it->is_string()) throw ConfigError("");
        }
        out = it->get<T>();
    } catch (const std::exception&) {
        throw ConfigError(std::string("invalid config: key '") + key + "' has the wrong type");
    }
}

}  // namespace

PipelineConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("invalid config: document must be a JSON object");
    const std::set<std::string> known = [] {
        std::set<std::string> keys;
        const json defaults = config_to_json(PipelineConfig{});
        for (const auto& [k, _] : defaults.items()) keys.insert(k);
        return keys;
    }();
    for (const auto& [k, _] : doc.items()) {
        if (!known.contains(k)) throw ConfigError("invalid config: unknown key '" + k + "'");
    }

    PipelineConfig c;
    auto& b = c.bundle;
    read(doc, "grid_resolution", b.grid_resolution);
    read(doc, "sigma", b.sigma);
    read(doc, "samples_per_edge", b.samples_per_edge);
    read(doc, "subdivisions", b.subdivisions);
    read(doc, "iterations", b.iterations);
    read(doc, "alpha", b.alpha);
    read(doc, "tau_long", b.tau_long);
    read(doc, "tau_short", b.tau_short);
    read(doc, "long_km", b.long_km);
    read(doc, "bypass_km", b.bypass_km);
    read(doc, "density_threshold_frac", b.density_threshold_frac);
    read(doc, "forward_dot_min", b.forward_dot_min);
    read(doc, "projection_min", b.projection_min);
    read(doc, "projection_max", b.projection_max);
    read(doc, "long_bonus", b.long_bonus);
    read(doc, "short_factor", b.short_factor);
    read(doc, "cohesion_max", b.cohesion_max);
    read(doc, "short_neighbour_weight", b.short_neighbour_weight);
    read(doc, "final_point_count", c.smoothing.final_point_count);
    read(doc, "orders", c.orders_path);
    read(doc, "warehouses", c.warehouses_path);
    read(doc, "regions", c.regions_path);
    read(doc, "inventory", c.inventory_path);

    try {
        if (auto it = doc.find("exclusions"); it != doc.end()) {
            b.exclusions.clear();
            for (const auto& pair : *it) {
                if (!pair.is_array() || pair.size() != 2) throw ConfigError("");
                b.exclusions.emplace(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
            }
        }
        if (auto it = doc.find("gaussian_passes"); it != doc.end()) {
            c.smoothing.gaussian_passes.clear();
            for (const auto& g : *it) {
                for (const auto& [k, _] : g.items()) {
                    if (k != "iterations" && k != "weight") throw ConfigError("");
                }
                c.smoothing.gaussian_passes.push_back({g.at("iterations").get<int>(), g.at("weight").get<double>()});
            }
        }
        if (auto it = doc.find("spline_densities"); it != doc.end()) {
            c.smoothing.spline_densities = it->get<std::vector<int>>();
        }
        if (auto it = doc.find("hex_radii_km"); it != doc.end()) {
            c.hex_radii_km = it->get<std::vector<double>>();
        }
    } catch (const std::exception&) {
        throw ConfigError("invalid config: malformed exclusions, gaussian_passes, spline_densities or hex_radii_km");
    }

    c.validate();
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

}  // namespace flowmap
