#pragma once

#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flowmap/csv.hpp"
#include "flowmap/ingest.hpp"
#include "flowmap/scene.hpp"
#include "flowmap/synth.hpp"

namespace fixtures {

inline std::string orders_csv(const flowmap::SynthCorpus& corpus) {
    std::ostringstream out;
    out << "order_id,shipper_lon,shipper_lat,dest_lon,dest_lat,quantity,value_usd,category_lvl1,category_lvl2,"
           "category_lvl3,date\n";
    for (const auto& r : corpus.order_rows) flowmap::csv::write_row(out, r);
    return out.str();
}

inline std::string inventory_csv(const flowmap::SynthCorpus& corpus) {
    std::ostringstream out;
    out << "warehouse_id,sku,stock,category_lvl1,category_lvl2,category_lvl3\n";
    for (const auto& r : corpus.inventory_rows) flowmap::csv::write_row(out, r);
    return out.str();
}

inline flowmap::SceneInputs scene_inputs(const flowmap::SynthCorpus& corpus) {
    flowmap::SceneInputs in;
    in.warehouses = corpus.warehouses;
    in.regions = corpus.regions;
    std::istringstream orders(orders_csv(corpus));
    in.orders = flowmap::parse_orders(orders).orders;
    std::istringstream inv(inventory_csv(corpus));
    in.inventory = flowmap::parse_inventory(inv).records;
    return in;
}

// The default synthetic scene: 51,371 orders aggregated to 202 flows.
inline std::vector<flowmap::FlowEdge> synthetic_flows(std::size_t orders = 51371, std::uint64_t seed = 20250701) {
    flowmap::SynthOptions opts;
    opts.orders = orders;
    opts.seed = seed;
    const auto corpus = flowmap::generate_corpus(opts);
    const auto in = scene_inputs(corpus);
    return flowmap::aggregate_flows(in.orders, in.warehouses, in.regions, flowmap::nearest_centroid_assigner(in.regions))
        .flows;
}

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("flowmap-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace fixtures
