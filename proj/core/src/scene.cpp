#include "flowmap/scene.hpp"

#include <algorithm>

#include "flowmap/error.hpp"
#include "flowmap/json_io.hpp"
#include "flowmap/smoothing.hpp"

namespace flowmap {

using nlohmann::json;

namespace {

std::vector<GeoPoint> to_geo(std::span<const GridPoint> path, const GridMapping& mapping, const GeoPoint& origin,
                             const GeoPoint& dest) {
    std::vector<GeoPoint> out;
    out.reserve(path.size());
    for (const auto& g : path) out.push_back(quantize(mapping.unproject(g)));
    // endpoints are pinned in grid space; carry the exact source coordinates
    out.front() = quantize(origin);
    out.back() = quantize(dest);
    return out;
}

std::vector<GeoPoint> straight_path(const GeoPoint& a, const GeoPoint& b, int k) {
    std::vector<GeoPoint> out(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) {
        const double t = static_cast<double>(i) / k;
        out[i] = quantize(GeoPoint{a.lon + (b.lon - a.lon) * t, a.lat + (b.lat - a.lat) * t});
    }
    out.front() = quantize(a);
    out.back() = quantize(b);
    return out;
}

}  // namespace

CompiledFlows compile_flows(std::span<const FlowEdge> flows, const PipelineConfig& config,
                            const AttractOptions& options) {
    config.validate();
    CompiledFlows out;
    if (flows.empty()) return out;

    BundleResult bundled = bundle(flows, config.bundle, options);
    const auto& mapping = bundled.mapping;
    out.report = bundled.report;
    out.flows.reserve(flows.size());
    out.grid_paths.reserve(flows.size());
    for (std::size_t j = 0; j < flows.size(); ++j) {
        const auto& poly = bundled.polylines[j];
        std::vector<GridPoint> path = poly.flow_class == FlowClass::Excluded
                                          ? resample_uniform(poly.points, config.smoothing.final_point_count)
                                          : smooth_pipeline(poly.points, config.smoothing);
        FlowGeometry g;
        g.flow = flows[j];
        g.flow_class = poly.flow_class;
        g.straight = straight_path(flows[j].origin, flows[j].dest_centroid, config.bundle.subdivisions);
        g.bundled = to_geo(path, mapping, flows[j].origin, flows[j].dest_centroid);
        out.flows.push_back(std::move(g));
        out.grid_endpoints.emplace_back(mapping.project(flows[j].origin), mapping.project(flows[j].dest_centroid));
        out.grid_paths.push_back(std::move(path));
    }
    out.report.wall_time_ms = bundled.report.wall_time_ms;
    return out;
}

std::vector<std::string> filter_presets(std::span<const Warehouse> warehouses) {
    std::vector<std::string> tags{kAllFilterTag};
    for (const auto& w : warehouses) tags.push_back(w.id);
    return tags;
}

SceneManifest build_manifest(const SceneInputs& inputs, const std::string& filter_tag, const PipelineConfig& config,
                             const AttractOptions& options) {
    const bool all = filter_tag == kAllFilterTag;
    if (!all && std::none_of(inputs.warehouses.begin(), inputs.warehouses.end(),
                             [&](const Warehouse& w) { return w.id == filter_tag; })) {
        throw InputError("unknown warehouse: " + filter_tag);
    }

    // Orders in this preset, and the anchor shared by every preset.
    const auto assign_region = nearest_centroid_assigner(inputs.regions);
    std::vector<OrderRecord> included;
    std::vector<OrderRecord> preset_orders;
    for (const auto& o : inputs.orders) {
        if (!assign_region(o.destination)) continue;
        included.push_back(o);
        if (all || assign_nearest_warehouse(o, inputs.warehouses).id == filter_tag) preset_orders.push_back(o);
    }
    const GeoPoint anchor = destination_centroid(included);

    auto aggregated = aggregate_flows(preset_orders, inputs.warehouses, inputs.regions, assign_region);

    SceneManifest m;
    m.filter_tag = filter_tag;
    m.warehouses = inputs.warehouses;
    auto compiled = compile_flows(aggregated.flows, config, options);
    m.flows = std::move(compiled.flows);
    m.report = compiled.report;

    for (double radius : config.hex_radii_km) {
        HexGrid grid{radius, anchor};
        m.hex_layers.push_back({radius, anchor, hex_binning(preset_orders, grid)});
    }
    for (const auto& w : inputs.warehouses) {
        const bool has_stock = std::any_of(inputs.inventory.begin(), inputs.inventory.end(),
                                           [&](const InventoryRecord& r) { return r.warehouse_id == w.id; });
        if (has_stock) m.sunbursts.push_back({w.id, build_hierarchy(inputs.inventory, w.id)});
    }
    return m;
}

json flows_to_geojson(std::span<const FlowGeometry> flows) {
    json features = json::array();
    for (const auto& g : flows) {
        json coords = json::array();
        for (const auto& p : g.bundled) coords.push_back(to_json(p));
        json props = to_json(g.flow);
        props["origin"] = to_json(quantize(g.flow.origin));
        props["dest_centroid"] = to_json(quantize(g.flow.dest_centroid));
        props["class"] = std::string(to_string(g.flow_class));
        props["id"] = g.flow.origin_warehouse + "->" + g.flow.dest_region;
        features.push_back({
            {"type", "Feature"},
            {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
            {"properties", props},
        });
    }
    return json{{"type", "FeatureCollection"}, {"features", features}};
}

json manifest_to_json(const SceneManifest& m) {
    json warehouses = json::array();
    for (const auto& w : m.warehouses) {
        const GeoPoint p = quantize(w.location);
        warehouses.push_back({{"id", w.id}, {"name", w.display_name}, {"lon", p.lon}, {"lat", p.lat}});
    }
    json flows = json::array();
    for (const auto& g : m.flows) {
        json straight = json::array();
        for (const auto& p : g.straight) straight.push_back(to_json(p));
        json bundled = json::array();
        for (const auto& p : g.bundled) bundled.push_back(to_json(p));
        json meta = to_json(g.flow);
        meta["origin"] = to_json(quantize(g.flow.origin));
        meta["dest_centroid"] = to_json(quantize(g.flow.dest_centroid));
        flows.push_back({
            {"id", g.flow.origin_warehouse + "->" + g.flow.dest_region},
            {"class", std::string(to_string(g.flow_class))},
            {"metadata", meta},
            {"straight", straight},
            {"bundled", bundled},
        });
    }
    json hex_layers = json::array();
    for (const auto& layer : m.hex_layers) {
        json bins = json::array();
        for (const auto& b : layer.bins) bins.push_back(to_json(b, layer.radius_km));
        const GeoPoint o = quantize(layer.origin);
        hex_layers.push_back({{"radius_km", layer.radius_km}, {"origin", to_json(o)}, {"bins", bins}});
    }
    json sunbursts = json::array();
    for (const auto& s : m.sunbursts) {
        sunbursts.push_back({{"warehouse_id", s.warehouse_id}, {"root", sunburst_to_json(s.root, s.root)}});
    }
    return json{
        {"version", m.version},
        {"filter_tag", m.filter_tag},
        {"warehouses", warehouses},
        {"flows", flows},
        {"hex_layers", hex_layers},
        {"sunbursts", sunbursts},
        {"report", to_json(m.report, false)},
    };
}

}  // namespace flowmap
