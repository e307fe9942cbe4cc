#include "flowmap/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <string_view>

#include "flowmap/csv.hpp"
#include "flowmap/error.hpp"

namespace flowmap {

namespace {

constexpr std::array<std::string_view, 11> kOrderColumns = {
    "order_id", "shipper_lon", "shipper_lat", "dest_lon", "dest_lat", "quantity",
    "value_usd", "category_lvl1", "category_lvl2", "category_lvl3", "date"};

constexpr std::array<std::string_view, 6> kInventoryColumns = {
    "warehouse_id", "sku", "stock", "category_lvl1", "category_lvl2", "category_lvl3"};

constexpr std::array<std::string_view, 4> kWarehouseColumns = {"id", "lon", "lat", "name"};
constexpr std::array<std::string_view, 3> kRegionColumns = {"label", "lon", "lat"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return v;
}

bool valid_date(std::string_view s) {
    s = trim(s);
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    const auto y = parse_int(s.substr(0, 4));
    const auto m = parse_int(s.substr(5, 2));
    const auto d = parse_int(s.substr(8, 2));
    if (!y || !m || !d) return false;
    const std::chrono::year_month_day ymd{std::chrono::year(static_cast<int>(*y)),
                                          std::chrono::month(static_cast<unsigned>(*m)),
                                          std::chrono::day(static_cast<unsigned>(*d))};
    return ymd.ok();
}

// Reads a lon/lat pair, classifying the failure when there is one.
const char* read_point(std::string_view lon_s, std::string_view lat_s, GeoPoint& out) {
    if (trim(lon_s).empty() || trim(lat_s).empty()) return exclusion::kMissingCoordinate;
    const auto lon = parse_double(lon_s);
    const auto lat = parse_double(lat_s);
    if (!lon || !lat) return exclusion::kNonNumeric;
    out = GeoPoint{*lon, *lat};
    if (!is_valid(out)) return exclusion::kCoordinateOutOfRange;
    return nullptr;
}

std::string field(const std::vector<std::string>& row, std::size_t idx) {
    return std::string(trim(row[idx]));
}

}  // namespace

std::map<std::string, std::size_t> ExclusionReport::counts_by_reason() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& e : entries) ++counts[e.reason];
    return counts;
}

void ExclusionReport::add(std::size_t line, std::string id, std::string reason) {
    entries.push_back({line, std::move(id), std::move(reason)});
}

OrderParseResult parse_orders(std::istream& in) {
    csv::Reader reader(in, kOrderColumns);
    std::array<std::size_t, kOrderColumns.size()> col{};
    for (std::size_t i = 0; i < kOrderColumns.size(); ++i) col[i] = reader.column(kOrderColumns[i]);
    const std::size_t width = *std::max_element(col.begin(), col.end()) + 1;

    OrderParseResult result;
    while (auto row = reader.next()) {
        ++result.report.rows_read;
        const std::size_t line = reader.line_number();
        if (row->size() < width) {
            result.report.add(line, row->empty() ? "" : (*row)[0], exclusion::kMissingField);
            continue;
        }
        OrderRecord o;
        o.order_id = field(*row, col[0]);
        if (o.order_id.empty()) {
            result.report.add(line, "", exclusion::kMissingField);
            continue;
        }
        if (const char* why = read_point((*row)[col[1]], (*row)[col[2]], o.shipper)) {
            result.report.add(line, o.order_id, why);
            continue;
        }
        if (const char* why = read_point((*row)[col[3]], (*row)[col[4]], o.destination)) {
            result.report.add(line, o.order_id, why);
            continue;
        }
        const auto qty = parse_int((*row)[col[5]]);
        if (!qty) {
            result.report.add(line, o.order_id, trim((*row)[col[5]]).empty() ? exclusion::kMissingField
                                                                             : exclusion::kNonNumeric);
            continue;
        }
        if (*qty < 1) {
            result.report.add(line, o.order_id, exclusion::kInvalidQuantity);
            continue;
        }
        o.quantity = *qty;
        const auto value = parse_double((*row)[col[6]]);
        if (!value) {
            result.report.add(line, o.order_id, trim((*row)[col[6]]).empty() ? exclusion::kMissingField
                                                                              : exclusion::kNonNumeric);
            continue;
        }
        if (*value < 0.0) {
            result.report.add(line, o.order_id, exclusion::kNegativeValue);
            continue;
        }
        o.value_cents = std::llround(*value * 100.0);
        o.category_lvl1 = field(*row, col[7]);
        o.category_lvl2 = field(*row, col[8]);
        o.category_lvl3 = field(*row, col[9]);
        if (o.category_lvl1.empty()) {
            result.report.add(line, o.order_id, exclusion::kMissingCategory);
            continue;
        }
        o.date = field(*row, col[10]);
        if (!valid_date(o.date)) {
            result.report.add(line, o.order_id, o.date.empty() ? exclusion::kMissingField : exclusion::kInvalidDate);
            continue;
        }
        result.orders.push_back(std::move(o));
    }
    return result;
}

InventoryParseResult parse_inventory(std::istream& in) {
    csv::Reader reader(in, kInventoryColumns);
    std::array<std::size_t, kInventoryColumns.size()> col{};
    for (std::size_t i = 0; i < kInventoryColumns.size(); ++i) col[i] = reader.column(kInventoryColumns[i]);
    const std::size_t width = *std::max_element(col.begin(), col.end()) + 1;

    InventoryParseResult result;
    while (auto row = reader.next()) {
        ++result.report.rows_read;
        const std::size_t line = reader.line_number();
        if (row->size() < width) {
            result.report.add(line, "", exclusion::kMissingField);
            continue;
        }
        InventoryRecord r;
        r.warehouse_id = field(*row, col[0]);
        r.sku = field(*row, col[1]);
        if (r.warehouse_id.empty() || r.sku.empty()) {
            result.report.add(line, r.sku, exclusion::kMissingField);
            continue;
        }
        const auto stock = parse_int((*row)[col[2]]);
        if (!stock) {
            result.report.add(line, r.sku, trim((*row)[col[2]]).empty() ? exclusion::kMissingField
                                                                        : exclusion::kNonNumeric);
            continue;
        }
        if (*stock < 0) {
            result.report.add(line, r.sku, exclusion::kNegativeStock);
            continue;
        }
        r.stock = *stock;
        r.category_lvl1 = field(*row, col[3]);
        r.category_lvl2 = field(*row, col[4]);
        r.category_lvl3 = field(*row, col[5]);
        if (r.category_lvl1.empty()) {
            result.report.add(line, r.sku, exclusion::kMissingCategory);
            continue;
        }
        result.records.push_back(std::move(r));
    }
    return result;
}

std::vector<Warehouse> parse_warehouses(std::istream& in) {
    csv::Reader reader(in, kWarehouseColumns);
    const auto c_id = reader.column("id");
    const auto c_lon = reader.column("lon");
    const auto c_lat = reader.column("lat");
    const auto c_name = reader.column("name");
    const std::size_t width = std::max({c_id, c_lon, c_lat, c_name}) + 1;

    std::vector<Warehouse> out;
    while (auto row = reader.next()) {
        const auto where = "warehouses line " + std::to_string(reader.line_number());
        if (row->size() < width) throw InputError(where + ": missing field");
        Warehouse w;
        w.id = field(*row, c_id);
        w.display_name = field(*row, c_name);
        if (w.id.empty()) throw InputError(where + ": empty id");
        if (const char* why = read_point((*row)[c_lon], (*row)[c_lat], w.location)) {
            throw InputError(where + ": " + why);
        }
        for (const auto& other : out) {
            if (other.id == w.id) throw InputError(where + ": duplicate warehouse id " + w.id);
            if (other.location == w.location) throw InputError(where + ": duplicate warehouse location");
        }
        out.push_back(std::move(w));
    }
    if (out.empty()) throw InputError("warehouse file has no rows");
    return out;
}

RegionCentroidTable parse_regions(std::istream& in) {
    csv::Reader reader(in, kRegionColumns);
    const auto c_label = reader.column("label");
    const auto c_lon = reader.column("lon");
    const auto c_lat = reader.column("lat");
    const std::size_t width = std::max({c_label, c_lon, c_lat}) + 1;

    RegionCentroidTable out;
    while (auto row = reader.next()) {
        const auto where = "regions line " + std::to_string(reader.line_number());
        if (row->size() < width) throw InputError(where + ": missing field");
        const auto label = field(*row, c_label);
        if (label.empty()) throw InputError(where + ": empty label");
        GeoPoint p;
        if (const char* why = read_point((*row)[c_lon], (*row)[c_lat], p)) {
            throw InputError(where + ": " + why);
        }
        if (!out.emplace(label, p).second) throw InputError(where + ": duplicate region " + label);
    }
    if (out.empty()) throw InputError("region file has no rows");
    return out;
}

const Warehouse& assign_nearest_warehouse(const OrderRecord& order, std::span<const Warehouse> warehouses) {
    if (warehouses.empty()) {
        throw InputError("no warehouses to assign orders to");
    }
    const Warehouse* best = nullptr;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (const auto& w : warehouses) {
        const double dx = order.shipper.lon - w.location.lon;
        const double dy = order.shipper.lat - w.location.lat;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2 || (d2 == best_d2 && w.id < best->id)) {
            best = &w;
            best_d2 = d2;
        }
    }
    return *best;
}

RegionAssigner nearest_centroid_assigner(const RegionCentroidTable& regions) {
    std::vector<Region> table;
    table.reserve(regions.size());
    for (const auto& [label, c] : regions) table.push_back({label, c});
    return [table = std::move(table)](const GeoPoint& p) -> std::optional<std::string> {
        const Region* best = nullptr;
        double best_d2 = std::numeric_limits<double>::infinity();
        // table is label-sorted, so strict < keeps the smallest label on ties
        for (const auto& r : table) {
            const double dx = p.lon - r.centroid.lon;
            const double dy = p.lat - r.centroid.lat;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2) {
                best = &r;
                best_d2 = d2;
            }
        }
        if (best == nullptr) return std::nullopt;
        return best->label;
    };
}

void FlowAccumulator::add(const OrderRecord& order, const std::string& warehouse_id, const std::string& region) {
    auto& g = groups_[Key{warehouse_id, region}];
    ++g.order_count;
    g.total_value_cents += order.value_cents;
    ++g.category_hist[order.category_lvl1];
}

void FlowAccumulator::merge(const FlowAccumulator& other) {
    for (const auto& [key, part] : other.groups_) {
        auto& g = groups_[key];
        g.order_count += part.order_count;
        g.total_value_cents += part.total_value_cents;
        for (const auto& [label, n] : part.category_hist) g.category_hist[label] += n;
    }
}

std::vector<FlowEdge> FlowAccumulator::finish(std::span<const Warehouse> warehouses,
                                              const RegionCentroidTable& regions) const {
    std::vector<FlowEdge> flows;
    flows.reserve(groups_.size());
    for (const auto& [key, part] : groups_) {
        const auto wit = std::find_if(warehouses.begin(), warehouses.end(),
                                      [&](const Warehouse& w) { return w.id == key.first; });
        if (wit == warehouses.end()) throw InputError("flow references unknown warehouse " + key.first);
        const auto rit = regions.find(key.second);
        if (rit == regions.end()) throw InputError("flow references unknown region " + key.second);
        FlowEdge e;
        e.origin_warehouse = key.first;
        e.origin = wit->location;
        e.dest_region = key.second;
        e.dest_centroid = rit->second;
        e.order_count = part.order_count;
        e.total_value_cents = part.total_value_cents;
        e.category_hist = part.category_hist;
        e.length_km = haversine_km(e.origin, e.dest_centroid);
        flows.push_back(std::move(e));
    }
    return flows;
}

AggregationResult aggregate_flows(std::span<const OrderRecord> orders, std::span<const Warehouse> warehouses,
                                  const RegionCentroidTable& regions, const RegionAssigner& assign_region) {
    AggregationResult result;
    FlowAccumulator acc;
    for (const auto& o : orders) {
        ++result.report.rows_read;
        const auto& w = assign_nearest_warehouse(o, warehouses);
        auto region = assign_region(o.destination);
        if (!region || !regions.contains(*region)) {
            result.report.add(0, o.order_id, exclusion::kNoRegion);
            continue;
        }
        acc.add(o, w.id, *region);
    }
    result.flows = acc.finish(warehouses, regions);
    return result;
}

}  // namespace flowmap
