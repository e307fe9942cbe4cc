#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flowmap/ingest.hpp"

namespace flowmap {

// The four fulfillment centers with their order shares.
struct WarehouseShare {
    Warehouse warehouse;
    double share = 0.0;
};

std::vector<WarehouseShare> default_warehouse_shares();
std::vector<Warehouse> default_warehouses();

// 50 US states plus DC, keyed by postal code.
RegionCentroidTable us_state_centroids();

struct SynthOptions {
    std::size_t orders = 51371;
    std::uint64_t seed = 20250701;
    std::size_t skus = 4000;
    double corrupt_fraction = 0.01;
};

// Reads SCENE_SEED, falling back to `fallback` when unset or unparsable.
std::uint64_t seed_from_env(std::uint64_t fallback);

struct SynthCorpus {
    std::vector<Warehouse> warehouses;
    RegionCentroidTable regions;
    std::vector<std::vector<std::string>> order_rows;      // without header
    std::vector<std::vector<std::string>> inventory_rows;  // without header
    std::size_t corrupt_rows = 0;
    // (warehouse, region) pairs that receive no orders by construction.
    std::set<std::pair<std::string, std::string>> unserved_pairs;
};

// Destinations are drawn close enough to a state centroid that the
// nearest-centroid assigner recovers the intended state, so the set of
// occupied (warehouse, state) pairs is fixed: 4 x 51 minus the two unserved
// pairs = 202 when orders are plentiful.
SynthCorpus generate_corpus(const SynthOptions& options);

// Writes orders.csv, warehouses.csv, regions.csv and inventory.csv.
void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

}  // namespace flowmap
