#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flowmap/geo.hpp"
#include "flowmap/inventory.hpp"

namespace flowmap {

using CategoryHistogram = std::map<std::string, std::int64_t>;

struct OrderRecord {
    std::string order_id;
    GeoPoint shipper;
    GeoPoint destination;
    std::int64_t quantity = 1;
    std::int64_t value_cents = 0;
    std::string category_lvl1;
    std::string category_lvl2;
    std::string category_lvl3;
    std::string date;  // YYYY-MM-DD
};

struct Warehouse {
    std::string id;
    GeoPoint location;
    std::string display_name;
};

struct Region {
    std::string label;
    GeoPoint centroid;
};

// Region label -> centroid, ordered by label.
using RegionCentroidTable = std::map<std::string, GeoPoint>;

// One aggregated warehouse -> region flow. `order_count` is the edge
// weight used by the density field.
struct FlowEdge {
    std::string origin_warehouse;
    GeoPoint origin;
    std::string dest_region;
    GeoPoint dest_centroid;
    std::int64_t order_count = 0;
    std::int64_t total_value_cents = 0;
    CategoryHistogram category_hist;
    double length_km = 0.0;

    double total_value_usd() const { return static_cast<double>(total_value_cents) / 100.0; }
};

// Rows dropped during parsing or aggregation, with the reason for each.
struct ExclusionReport {
    struct Entry {
        std::size_t line = 0;  // 0 when the exclusion happened after parsing
        std::string id;
        std::string reason;
    };

    std::size_t rows_read = 0;
    std::vector<Entry> entries;

    std::size_t excluded() const { return entries.size(); }
    std::map<std::string, std::size_t> counts_by_reason() const;
    void add(std::size_t line, std::string id, std::string reason);
};

namespace exclusion {
inline constexpr const char* kMissingField = "missing field";
inline constexpr const char* kMissingCoordinate = "missing coordinate";
inline constexpr const char* kCoordinateOutOfRange = "out-of-range coordinate";
inline constexpr const char* kNonNumeric = "non-numeric value";
inline constexpr const char* kInvalidQuantity = "invalid quantity";
inline constexpr const char* kNegativeValue = "negative value";
inline constexpr const char* kNegativeStock = "negative stock";
inline constexpr const char* kInvalidDate = "invalid date";
inline constexpr const char* kMissingCategory = "missing category";
inline constexpr const char* kNoRegion = "no region mapping";
}  // namespace exclusion

struct OrderParseResult {
    std::vector<OrderRecord> orders;
    ExclusionReport report;
};

struct InventoryParseResult {
    std::vector<InventoryRecord> records;
    ExclusionReport report;
};

// Bad rows are excluded and reported; a missing header throws InputError.
OrderParseResult parse_orders(std::istream& in);
InventoryParseResult parse_inventory(std::istream& in);

// Reference tables are small and hand-maintained, so any bad row is fatal.
std::vector<Warehouse> parse_warehouses(std::istream& in);
RegionCentroidTable parse_regions(std::istream& in);

// Planar Euclidean nearest warehouse on raw (lon, lat); ties go to the
// lexicographically smallest id. Throws InputError on an empty list.
const Warehouse& assign_nearest_warehouse(const OrderRecord& order, std::span<const Warehouse> warehouses);

using RegionAssigner = std::function<std::optional<std::string>(const GeoPoint&)>;

// Nearest centroid in planar (lon, lat), ties to the smallest label.
RegionAssigner nearest_centroid_assigner(const RegionCentroidTable& regions);

// Partial group-by over (warehouse, region). merge() is associative and
// commutative, so partitions of the input can be accumulated independently.
class FlowAccumulator {
public:
    struct Partial {
        std::int64_t order_count = 0;
        std::int64_t total_value_cents = 0;
        CategoryHistogram category_hist;

        friend bool operator==(const Partial&, const Partial&) = default;
    };
    using Key = std::pair<std::string, std::string>;  // (warehouse id, region label)

    void add(const OrderRecord& order, const std::string& warehouse_id, const std::string& region);
    void merge(const FlowAccumulator& other);

    const std::map<Key, Partial>& groups() const { return groups_; }

    // One FlowEdge per occupied pair, ordered by (warehouse, region).
    std::vector<FlowEdge> finish(std::span<const Warehouse> warehouses, const RegionCentroidTable& regions) const;

    friend bool operator==(const FlowAccumulator&, const FlowAccumulator&) = default;

private:
    std::map<Key, Partial> groups_;
};

struct AggregationResult {
    std::vector<FlowEdge> flows;
    ExclusionReport report;  // orders dropped for lack of a region
};

AggregationResult aggregate_flows(std::span<const OrderRecord> orders, std::span<const Warehouse> warehouses,
                                  const RegionCentroidTable& regions, const RegionAssigner& assign_region);

}  // namespace flowmap
