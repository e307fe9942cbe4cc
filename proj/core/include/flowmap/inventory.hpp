#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flowmap {

struct InventoryRecord {
    std::string warehouse_id;
    std::string sku;
    std::int64_t stock = 0;
    std::string category_lvl1;
    std::string category_lvl2;
    std::string category_lvl3;
};

inline constexpr std::string_view kUnspecifiedCategory = "(unspecified)";

// Node of a warehouse's root -> lvl1 -> lvl2 -> lvl3 stock tree. Children are
// sorted by stock_total descending, then label ascending.
struct SunburstNode {
    std::string label;
    int depth = 0;
    std::int64_t stock_total = 0;
    std::vector<SunburstNode> children;

    const SunburstNode* find_child(std::string_view child_label) const;
};

// Share of the root total held by `node`. An empty warehouse reports 1 for
// the root and 0 elsewhere.
double fraction_of_root(const SunburstNode& node, const SunburstNode& root);

// Throws InputError("unknown warehouse") when no record matches.
SunburstNode build_hierarchy(std::span<const InventoryRecord> records, std::string_view warehouse_id);

// Stock of the named lvl1 category over the root total; 0 when absent.
double share_of_category(const SunburstNode& tree, std::string_view lvl1_label);

}  // namespace flowmap
