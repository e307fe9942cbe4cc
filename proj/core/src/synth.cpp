#include "flowmap/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <string_view>

#include "flowmap/csv.hpp"
#include "flowmap/error.hpp"

namespace flowmap {

namespace {

struct StateInfo {
    const char* code;
    double lon;
    double lat;
    double population_m;
};

constexpr std::array<StateInfo, 51> kStates = {{
    {"AK", -152.27, 64.07, 0.73}, {"AL", -86.83, 32.79, 5.07},  {"AR", -92.44, 34.90, 3.05},
    {"AZ", -111.66, 34.29, 7.36}, {"CA", -119.45, 37.17, 39.0}, {"CO", -105.55, 38.99, 5.84},
    {"CT", -72.73, 41.62, 3.63},  {"DC", -77.02, 38.90, 0.67},  {"DE", -75.51, 38.99, 1.02},
    {"FL", -82.45, 28.63, 22.2},  {"GA", -83.44, 32.65, 11.0},  {"HI", -156.37, 20.29, 1.44},
    {"IA", -93.50, 42.08, 3.20},  {"ID", -114.61, 44.39, 1.94}, {"IL", -89.20, 40.04, 12.5},
    {"IN", -86.28, 39.89, 6.83},  {"KS", -98.38, 38.48, 2.94},  {"KY", -85.30, 37.53, 4.53},
    {"LA", -91.96, 31.07, 4.59},  {"MA", -71.81, 42.26, 7.00},  {"MD", -76.79, 39.05, 6.18},
    {"ME", -69.24, 45.37, 1.40},  {"MI", -85.41, 44.35, 10.0},  {"MN", -94.31, 46.28, 5.74},
    {"MO", -92.46, 38.36, 6.20},  {"MS", -89.66, 32.74, 2.94},  {"MT", -109.63, 47.05, 1.12},
    {"NC", -79.39, 35.56, 10.8},  {"ND", -100.47, 47.45, 0.78}, {"NE", -99.79, 41.53, 1.98},
    {"NH", -71.58, 43.68, 1.40},  {"NJ", -74.67, 40.19, 9.29},  {"NM", -106.11, 34.41, 2.11},
    {"NV", -116.65, 39.33, 3.19}, {"NY", -75.53, 42.95, 19.6},  {"OH", -82.79, 40.29, 11.8},
    {"OK", -97.49, 35.58, 4.05},  {"OR", -120.56, 43.93, 4.23}, {"PA", -77.80, 40.88, 13.0},
    {"RI", -71.56, 41.68, 1.10},  {"SC", -80.90, 33.92, 5.37},  {"SD", -100.23, 44.44, 0.92},
    {"TN", -86.35, 35.86, 7.13},  {"TX", -99.33, 31.46, 30.5},  {"UT", -111.67, 39.32, 3.42},
    {"VA", -78.85, 37.52, 8.72},  {"VT", -72.67, 44.07, 0.65},  {"WA", -120.45, 47.38, 7.81},
    {"WI", -89.99, 44.62, 5.91},  {"WV", -80.62, 38.64, 1.77},  {"WY", -107.55, 43.00, 0.58},
}};

struct Taxon {
    const char* lvl1;
    std::array<const char*, 3> lvl2;
    std::array<std::array<const char*, 3>, 3> lvl3;
};

const std::array<Taxon, 6> kTaxonomy = {{
    {"Apparel",
     {"Tops", "Bottoms", "Outerwear"},
     {{{"T-Shirts", "Blouses", "Sweaters"}, {"Jeans", "Skirts", "Shorts"}, {"Jackets", "Coats", "Vests"}}}},
    {"Electronics",
     {"Audio", "Computers", "Mobile"},
     {{{"Headphones", "Speakers", "Earbuds"}, {"Laptops", "Monitors", "Keyboards"}, {"Phones", "Chargers", "Cases"}}}},
    {"Home & Garden",
     {"Kitchen", "Garden", "Decor"},
     {{{"Cookware", "Utensils", "Storage"}, {"Planters", "Tools", "Seeds"}, {"Lighting", "Rugs", "Frames"}}}},
    {"Beauty",
     {"Skincare", "Makeup", "Fragrance"},
     {{{"Cleansers", "Moisturizers", "Serums"}, {"Lipstick", "Foundation", "Mascara"}, {"Perfume", "Cologne", "Body Mist"}}}},
    {"Sports & Outdoors",
     {"Fitness", "Camping", "Cycling"},
     {{{"Weights", "Yoga Mats", "Bands"}, {"Tents", "Sleeping Bags", "Lanterns"}, {"Helmets", "Lights", "Locks"}}}},
    {"Toys",
     {"Games", "Building", "Plush"},
     {{{"Board Games", "Puzzles", "Card Games"}, {"Blocks", "Kits", "Models"}, {"Bears", "Animals", "Dolls"}}}},
}};

constexpr std::array<double, 6> kBaseCategoryWeights = {0.30, 0.22, 0.20, 0.12, 0.10, 0.06};

// std:: distributions are implementation-defined; these are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }
    std::size_t weighted(const std::vector<double>& cumulative) {
        const double x = uniform() * cumulative.back();
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
    }
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
    }

private:
    std::mt19937_64 engine_;
};

std::vector<double> cumulative(const std::vector<double>& w) {
    std::vector<double> c(w.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) c[i] = (acc += w[i]);
    return c;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string padded(const char* prefix, std::size_t n, int width) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, n);
    return buf;
}

}  // namespace

std::vector<WarehouseShare> default_warehouse_shares() {
    return {
        {{"WH-CA", {-117.60, 34.06}, "California Fulfillment Center"}, 0.527},
        {{"WH-NJ", {-74.41, 40.52}, "New Jersey Fulfillment Center"}, 0.333},
        {{"WH-TX", {-96.80, 32.78}, "Texas Fulfillment Center"}, 0.084},
        {{"WH-IL", {-87.90, 41.88}, "Illinois Fulfillment Center"}, 0.056},
    };
}

std::vector<Warehouse> default_warehouses() {
    std::vector<Warehouse> out;
    for (auto& s : default_warehouse_shares()) out.push_back(s.warehouse);
    return out;
}

RegionCentroidTable us_state_centroids() {
    RegionCentroidTable t;
    for (const auto& s : kStates) t.emplace(s.code, GeoPoint{s.lon, s.lat});
    return t;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char* raw = std::getenv("SCENE_SEED");
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0') return fallback;
    return v;
}

SynthCorpus generate_corpus(const SynthOptions& options) {
    Rng rng(options.seed);
    SynthCorpus corpus;
    const auto shares = default_warehouse_shares();
    for (const auto& s : shares) corpus.warehouses.push_back(s.warehouse);
    corpus.regions = us_state_centroids();
    corpus.unserved_pairs = {{"WH-IL", "HI"}, {"WH-TX", "AK"}};

    // Sampling radius per state: under half the gap to the nearest other
    // centroid, so the nearest centroid is always the intended one.
    std::vector<double> radius(kStates.size());
    for (std::size_t i = 0; i < kStates.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < kStates.size(); ++j) {
            if (i == j) continue;
            nearest = std::min(nearest, std::hypot(kStates[i].lon - kStates[j].lon, kStates[i].lat - kStates[j].lat));
        }
        radius[i] = std::min(0.45 * nearest, 2.0);
    }

    // Per-state category mix: base weights perturbed by up to +-60%.
    std::vector<std::vector<double>> category_cum(kStates.size());
    for (auto& c : category_cum) {
        std::vector<double> w(kBaseCategoryWeights.begin(), kBaseCategoryWeights.end());
        for (auto& x : w) x *= rng.uniform(0.4, 1.6);
        c = cumulative(w);
    }

    // Orders per warehouse from the shares; rounding slack goes to the first.
    std::vector<std::size_t> per_wh(shares.size());
    std::size_t assigned = 0;
    for (std::size_t w = 1; w < shares.size(); ++w) {
        per_wh[w] = static_cast<std::size_t>(std::floor(shares[w].share * static_cast<double>(options.orders)));
        assigned += per_wh[w];
    }
    per_wh[0] = options.orders - std::min(assigned, options.orders);

    struct Planned {
        std::size_t wh;
        std::size_t state;
        bool guaranteed;
    };
    std::vector<Planned> plan;
    plan.reserve(options.orders);
    for (std::size_t w = 0; w < shares.size(); ++w) {
        std::vector<std::size_t> served;
        std::vector<double> weights;
        for (std::size_t s = 0; s < kStates.size(); ++s) {
            if (corpus.unserved_pairs.contains({shares[w].warehouse.id, kStates[s].code})) continue;
            served.push_back(s);
            weights.push_back(kStates[s].population_m);
        }
        const auto cum = cumulative(weights);
        for (std::size_t n = 0; n < per_wh[w]; ++n) {
            // one order per served state first, so every allowed pair is occupied
            const bool first_pass = n < served.size();
            plan.push_back({w, first_pass ? served[n] : served[rng.weighted(cum)], first_pass});
        }
    }

    // Corrupt a fraction of the non-guaranteed orders.
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        if (!plan[i].guaranteed) candidates.push_back(i);
    }
    rng.shuffle(candidates);
    const std::size_t n_corrupt = std::min(
        candidates.size(), static_cast<std::size_t>(std::llround(options.corrupt_fraction * static_cast<double>(plan.size()))));
    std::vector<int> corruption(plan.size(), -1);
    for (std::size_t c = 0; c < n_corrupt; ++c) corruption[candidates[c]] = static_cast<int>(c % 4);
    corpus.corrupt_rows = n_corrupt;

    corpus.order_rows.reserve(plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const auto& wh = shares[plan[i].wh].warehouse;
        const auto& st = kStates[plan[i].state];
        const double ang = rng.uniform(0.0, 2.0 * kPi);
        const double rad = radius[plan[i].state] * std::sqrt(rng.uniform());
        const double dest_lon = st.lon + rad * std::cos(ang);
        const double dest_lat = st.lat + rad * std::sin(ang);
        const double ship_lon = wh.location.lon + rng.uniform(-0.05, 0.05);
        const double ship_lat = wh.location.lat + rng.uniform(-0.05, 0.05);
        const auto& tax = kTaxonomy[rng.weighted(category_cum[plan[i].state])];
        const std::size_t l2 = rng.index(3);
        const std::size_t l3 = rng.index(3);
        const auto qty = 1 + rng.index(5);
        const double value = std::round(rng.uniform(5.0, 300.0) * 100.0) / 100.0;
        const auto day = 1 + rng.index(31);

        std::vector<std::string> row{
            padded("ORD-", i + 1, 7), fixed(ship_lon, 6), fixed(ship_lat, 6), fixed(dest_lon, 6), fixed(dest_lat, 6),
            std::to_string(qty), fixed(value, 2), tax.lvl1, tax.lvl2[l2], tax.lvl3[l2][l3],
            padded("2025-07-", day, 2)};
        switch (corruption[i]) {
            case 0: row[4].clear(); break;       // missing destination lat
            case 1: row[1].clear(); break;       // missing shipper lon
            case 2: row[3] = "n/a"; break;       // non-numeric
            case 3: row[4] = "95.000000"; break;  // out of range
            default: break;
        }
        corpus.order_rows.push_back(std::move(row));
    }
    rng.shuffle(corpus.order_rows);

    std::vector<double> wh_weights;
    for (const auto& s : shares) wh_weights.push_back(s.share);
    const auto wh_cum = cumulative(wh_weights);
    std::vector<double> cat_weights(kBaseCategoryWeights.begin(), kBaseCategoryWeights.end());
    const auto cat_cum = cumulative(cat_weights);
    corpus.inventory_rows.reserve(options.skus);
    for (std::size_t i = 0; i < options.skus; ++i) {
        // first SKUs cover every warehouse
        const auto& wh = shares[i < shares.size() ? i : rng.weighted(wh_cum)].warehouse;
        const auto& tax = kTaxonomy[rng.weighted(cat_cum)];
        const std::size_t l2 = rng.index(3);
        const std::size_t l3 = rng.index(3);
        const bool unspecified = rng.uniform() < 0.02;
        corpus.inventory_rows.push_back({wh.id, padded("SKU-", i + 1, 5), std::to_string(rng.index(501)), tax.lvl1,
                                         tax.lvl2[l2], unspecified ? "" : tax.lvl3[l2][l3]});
    }
    return corpus;
}

void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + (dir / name).string());
        return out;
    };
    {
        auto out = open("orders.csv");
        const std::vector<std::string> header{"order_id", "shipper_lon", "shipper_lat", "dest_lon",
                                              "dest_lat", "quantity", "value_usd", "category_lvl1",
                                              "category_lvl2", "category_lvl3", "date"};
        csv::write_row(out, header);
        for (const auto& r : corpus.order_rows) csv::write_row(out, r);
    }
    {
        auto out = open("warehouses.csv");
        out << "id,lon,lat,name\n";
        for (const auto& w : corpus.warehouses) {
            const std::vector<std::string> row{w.id, fixed(w.location.lon, 6), fixed(w.location.lat, 6), w.display_name};
            csv::write_row(out, row);
        }
    }
    {
        auto out = open("regions.csv");
        out << "label,lon,lat\n";
        for (const auto& [label, c] : corpus.regions) {
            const std::vector<std::string> row{label, fixed(c.lon, 6), fixed(c.lat, 6)};
            csv::write_row(out, row);
        }
    }
    {
        auto out = open("inventory.csv");
        out << "warehouse_id,sku,stock,category_lvl1,category_lvl2,category_lvl3\n";
        for (const auto& r : corpus.inventory_rows) csv::write_row(out, r);
    }
}

}  // namespace flowmap
