#include "flowmap/inventory.hpp"

#include <algorithm>
#include <map>

#include "flowmap/error.hpp"

namespace flowmap {

namespace {

// Intermediate tree keyed by label so insertion is order independent.
struct Builder {
    std::int64_t stock = 0;
    std::map<std::string, Builder> children;
};

SunburstNode freeze(const std::string& label, int depth, const Builder& b) {
    SunburstNode node{label, depth, b.stock, {}};
    node.children.reserve(b.children.size());
    for (const auto& [child_label, child] : b.children) {
        node.children.push_back(freeze(child_label, depth + 1, child));
    }
    std::stable_sort(node.children.begin(), node.children.end(), [](const SunburstNode& a, const SunburstNode& c) {
        if (a.stock_total != c.stock_total) return a.stock_total > c.stock_total;
        return a.label < c.label;
    });
    return node;
}

std::string or_unspecified(const std::string& label) {
    return label.empty() ? std::string(kUnspecifiedCategory) : label;
}

}  // namespace

const SunburstNode* SunburstNode::find_child(std::string_view child_label) const {
    for (const auto& c : children) {
        if (c.label == child_label) return &c;
    }
    return nullptr;
}

double fraction_of_root(const SunburstNode& node, const SunburstNode& root) {
    if (root.stock_total <= 0) {
        return &node == &root ? 1.0 : 0.0;
    }
    return static_cast<double>(node.stock_total) / static_cast<double>(root.stock_total);
}

SunburstNode build_hierarchy(std::span<const InventoryRecord> records, std::string_view warehouse_id) {
    Builder root;
    bool any = false;
    for (const auto& r : records) {
        if (r.warehouse_id != warehouse_id) continue;
        any = true;
        root.stock += r.stock;
        auto& l1 = root.children[or_unspecified(r.category_lvl1)];
        l1.stock += r.stock;
        auto& l2 = l1.children[or_unspecified(r.category_lvl2)];
        l2.stock += r.stock;
        auto& l3 = l2.children[or_unspecified(r.category_lvl3)];
        l3.stock += r.stock;
    }
    if (!any) {
        throw InputError("unknown warehouse: " + std::string(warehouse_id));
    }
    return freeze(std::string(warehouse_id), 0, root);
}

double share_of_category(const SunburstNode& tree, std::string_view lvl1_label) {
    const SunburstNode* node = tree.find_child(lvl1_label);
    if (node == nullptr || tree.stock_total <= 0) return 0.0;
    return static_cast<double>(node->stock_total) / static_cast<double>(tree.stock_total);
}

}  // namespace flowmap
