#include "flowmap/json_io.hpp"

#include <cmath>
#include <fstream>

#include "flowmap/error.hpp"

namespace flowmap {

using nlohmann::json;

double quantize_coord(double v) { return std::round(v * 1e9) / 1e9; }

GeoPoint quantize(const GeoPoint& p) { return {quantize_coord(p.lon), quantize_coord(p.lat)}; }

json to_json(const GeoPoint& p) { return json::array({p.lon, p.lat}); }

json to_json(const FlowEdge& f) {
    return json{
        {"origin_warehouse", f.origin_warehouse},
        {"origin", to_json(f.origin)},
        {"dest_region", f.dest_region},
        {"dest_centroid", to_json(f.dest_centroid)},
        {"order_count", f.order_count},
        {"total_value_cents", f.total_value_cents},
        {"total_value_usd", f.total_value_usd()},
        {"category_hist", f.category_hist},
        {"length_km", f.length_km},
    };
}

json to_json(const ExclusionReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        entries.push_back({{"line", e.line}, {"id", e.id}, {"reason", e.reason}});
    }
    return json{
        {"rows_read", r.rows_read},
        {"excluded", r.excluded()},
        {"by_reason", r.counts_by_reason()},
        {"entries", entries},
    };
}

json to_json(const PipelineReport& r, bool include_wall_time) {
    json j{
        {"flow_count", r.flow_count},
        {"class_counts", r.class_counts},
        {"cluster_count", r.cluster_count},
        {"mask_cells", r.mask_cells},
        {"skeleton_size", r.skeleton_size},
        {"accepted_attractions", r.accepted_attractions},
        {"iteration_displacement", r.iteration_displacement},
    };
    if (include_wall_time) j["wall_time_ms"] = r.wall_time_ms;
    return j;
}

json to_json(const HexBin& bin, double radius_km, std::size_t top_k) {
    json top = json::array();
    for (const auto& [label, n] : top_k_categories(bin, top_k)) top.push_back({{"label", label}, {"count", n}});
    const GeoPoint c = quantize(bin.center);
    return json{
        {"q", bin.axial.q},       {"r", bin.axial.r},         {"lon", c.lon},
        {"lat", c.lat},           {"radius_km", radius_km},   {"count", bin.count},
        {"dominant", bin.dominant}, {"top_categories", top},
    };
}

json sunburst_to_json(const SunburstNode& node, const SunburstNode& root) {
    json children = json::array();
    for (const auto& c : node.children) children.push_back(sunburst_to_json(c, root));
    return json{
        {"label", node.label},
        {"depth", node.depth},
        {"stock", node.stock_total},
        {"fraction", fraction_of_root(node, root)},
        {"children", children},
    };
}

namespace {

GeoPoint point_from_json(const json& j) {
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    if (j.is_object()) return {j.at("lon").get<double>(), j.at("lat").get<double>()};
    throw InputError("expected [lon, lat]");
}

}  // namespace

FlowEdge flow_from_json(const json& j) {
    try {
        FlowEdge f;
        f.origin_warehouse = j.at("origin_warehouse").get<std::string>();
        f.origin = point_from_json(j.at("origin"));
        f.dest_region = j.at("dest_region").get<std::string>();
        f.dest_centroid = point_from_json(j.at("dest_centroid"));
        f.order_count = j.at("order_count").get<std::int64_t>();
        if (j.contains("total_value_cents")) {
            f.total_value_cents = j.at("total_value_cents").get<std::int64_t>();
        } else if (j.contains("total_value_usd")) {
            f.total_value_cents = std::llround(j.at("total_value_usd").get<double>() * 100.0);
        }
        if (j.contains("category_hist")) f.category_hist = j.at("category_hist").get<CategoryHistogram>();
        f.length_km = j.contains("length_km") ? j.at("length_km").get<double>() : haversine_km(f.origin, f.dest_centroid);
        if (f.order_count < 1) throw InputError("order_count must be >= 1");
        if (!is_valid(f.origin) || !is_valid(f.dest_centroid)) throw InputError("invalid coordinates");
        return f;
    } catch (const InputError& e) {
        throw InputError(std::string("malformed flow: ") + e.what());
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed flow: ") + e.what());
    }
}

std::vector<FlowEdge> flows_from_json(const json& doc) {
    if (!doc.is_array()) throw InputError("flow document must be a JSON array");
    std::vector<FlowEdge> flows;
    flows.reserve(doc.size());
    for (const auto& j : doc) flows.push_back(flow_from_json(j));
    return flows;
}

json flows_to_json(std::span<const FlowEdge> flows) {
    json arr = json::array();
    for (const auto& f : flows) arr.push_back(to_json(f));
    return arr;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + " is not valid JSON: " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& doc, int indent) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << doc.dump(indent) << '\n';
    if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace flowmap
