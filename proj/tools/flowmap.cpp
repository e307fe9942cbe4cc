// flowmap: ingest orders, bundle flows and compile scene manifests.
//
// Exit status: 0 on success, 2 for bad input or configuration, 3 when the
// bundling pipeline itself fails.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "flowmap/bundle.hpp"
#include "flowmap/config.hpp"
#include "flowmap/error.hpp"
#include "flowmap/hexbin.hpp"
#include "flowmap/ingest.hpp"
#include "flowmap/inventory.hpp"
#include "flowmap/json_io.hpp"
#include "flowmap/scene.hpp"
#include "flowmap/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitPipeline = 3;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw flowmap::InputError("cannot open " + path);
    return in;
}

std::vector<flowmap::OrderRecord> load_orders(const std::string& path, flowmap::ExclusionReport* report = nullptr) {
    auto in = open_input(path);
    auto parsed = flowmap::parse_orders(in);
    if (parsed.orders.empty()) throw flowmap::InputError(path + ": no usable orders");
    if (report != nullptr) *report = std::move(parsed.report);
    return std::move(parsed.orders);
}

std::vector<flowmap::Warehouse> load_warehouses(const std::string& path) {
    auto in = open_input(path);
    return flowmap::parse_warehouses(in);
}

flowmap::RegionCentroidTable load_regions(const std::string& path) {
    auto in = open_input(path);
    return flowmap::parse_regions(in);
}

std::vector<flowmap::InventoryRecord> load_inventory(const std::string& path) {
    auto in = open_input(path);
    return flowmap::parse_inventory(in).records;
}

flowmap::PipelineConfig load_config_or_default(const std::string& path) {
    return path.empty() ? flowmap::PipelineConfig{} : flowmap::load_config(path);
}

// Command-line value wins, then the config file's path field.
std::string pick(const std::string& flag, const std::string& from_config, const char* name) {
    if (!flag.empty()) return flag;
    if (!from_config.empty()) return from_config;
    throw flowmap::ConfigError(std::string("no ") + name + " file given (flag or config)");
}

struct IngestArgs {
    std::string orders, warehouses, regions, out, exclusions;
};

int cmd_ingest(const IngestArgs& a) {
    flowmap::ExclusionReport parse_report;
    const auto orders = load_orders(a.orders, &parse_report);
    const auto warehouses = load_warehouses(a.warehouses);
    const auto regions = load_regions(a.regions);

    auto agg = flowmap::aggregate_flows(orders, warehouses, regions, flowmap::nearest_centroid_assigner(regions));
    for (auto& e : agg.report.entries) parse_report.add(e.line, e.id, e.reason);

    flowmap::write_json_file(a.out, flowmap::flows_to_json(agg.flows), 1);
    const fs::path excl = a.exclusions.empty() ? fs::path(a.out).replace_extension(".exclusions.json") : fs::path(a.exclusions);
    flowmap::write_json_file(excl, flowmap::to_json(parse_report), 1);

    const std::size_t rows = parse_report.rows_read;
    const std::size_t flows = agg.flows.size();
    std::printf("rows: %zu\nexcluded: %zu\nflows: %zu\n", rows, parse_report.excluded(), flows);
    for (const auto& [reason, n] : parse_report.counts_by_reason()) std::printf("  %s: %zu\n", reason.c_str(), n);
    if (flows == 0) throw flowmap::InputError("no flows after aggregation");
    std::printf("reduction ratio: %.1fx\n", static_cast<double>(rows) / static_cast<double>(flows));
    return 0;
}

struct BundleArgs {
    std::string flows, config, out, report;
    int jobs = 1;
};

int cmd_bundle(const BundleArgs& a) {
    const auto config = load_config_or_default(a.config);
    const auto flows = flowmap::flows_from_json(flowmap::read_json_file(a.flows));
    if (flows.empty()) throw flowmap::InputError(a.flows + ": no flows");

    const auto t0 = std::chrono::steady_clock::now();
    const auto compiled = flowmap::compile_flows(flows, config, {a.jobs, {}});
    const double total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    flowmap::write_json_file(a.out, flowmap::flows_to_geojson(compiled.flows));
    if (!a.report.empty()) {
        json report = flowmap::to_json(compiled.report);
        report["total_time_ms"] = total_ms;
        flowmap::write_json_file(a.report, report, 1);
    }
    std::fprintf(stderr, "bundled %zu flows in %.1f ms (%zu skeleton points, %zu attractions)\n", flows.size(),
                 total_ms, compiled.report.skeleton_size, compiled.report.accepted_attractions);
    return 0;
}

struct HexbinArgs {
    std::string orders, out;
    double radius_km = 25.0;
};

int cmd_hexbin(const HexbinArgs& a) {
    if (!(a.radius_km > 0.0)) throw flowmap::ConfigError("radius-km must be positive");
    const auto orders = load_orders(a.orders);
    const flowmap::HexGrid grid{a.radius_km, flowmap::destination_centroid(orders)};
    const auto bins = flowmap::hex_binning(orders, grid);

    json arr = json::array();
    for (const auto& b : bins) arr.push_back(flowmap::to_json(b, a.radius_km));
    flowmap::write_json_file(a.out,
                             {{"radius_km", a.radius_km}, {"origin", flowmap::to_json(flowmap::quantize(grid.origin))},
                              {"order_count", orders.size()}, {"bins", arr}},
                             1);
    std::printf("%zu orders in %zu bins\n", orders.size(), bins.size());
    return 0;
}

struct SunburstArgs {
    std::string inventory, warehouse, out;
};

int cmd_sunburst(const SunburstArgs& a) {
    const auto records = load_inventory(a.inventory);
    const auto root = flowmap::build_hierarchy(records, a.warehouse);
    flowmap::write_json_file(a.out, {{"warehouse_id", a.warehouse}, {"root", flowmap::sunburst_to_json(root, root)}}, 1);
    std::printf("%s: %lld units in %zu top-level categories\n", a.warehouse.c_str(),
                static_cast<long long>(root.stock_total), root.children.size());
    return 0;
}

struct SceneArgs {
    std::string orders, warehouses, regions, inventory, config, out_dir;
    int jobs = 1;
    bool parallel_presets = false;
    bool geojson = false;
};

int cmd_scene(const SceneArgs& a) {
    const auto config = load_config_or_default(a.config);
    flowmap::SceneInputs inputs;
    inputs.orders = load_orders(pick(a.orders, config.orders_path, "orders"));
    inputs.warehouses = load_warehouses(pick(a.warehouses, config.warehouses_path, "warehouses"));
    inputs.regions = load_regions(pick(a.regions, config.regions_path, "regions"));
    inputs.inventory = load_inventory(pick(a.inventory, config.inventory_path, "inventory"));

    const auto presets = flowmap::filter_presets(inputs.warehouses);
    const flowmap::AttractOptions options{a.jobs, {}};
    std::vector<flowmap::SceneManifest> manifests;
    if (a.parallel_presets) {
        std::vector<std::future<flowmap::SceneManifest>> pending;
        for (const auto& tag : presets) {
            pending.push_back(std::async(std::launch::async, [&, tag] {
                return flowmap::build_manifest(inputs, tag, config, options);
            }));
        }
        // get() every future before rethrowing so no task outlives `inputs`
        std::exception_ptr failure;
        for (auto& f : pending) {
            try {
                manifests.push_back(f.get());
            } catch (...) {
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (const auto& tag : presets) manifests.push_back(flowmap::build_manifest(inputs, tag, config, options));
    }

    const fs::path scenes = fs::path(a.out_dir) / "scenes";
    std::vector<fs::path> written;
    try {
        json index = json::array();
        for (const auto& m : manifests) {
            const fs::path path = scenes / (m.filter_tag + ".json");
            written.push_back(path);
            flowmap::write_json_file(path, flowmap::manifest_to_json(m));
            index.push_back({{"filter_tag", m.filter_tag}, {"path", m.filter_tag + ".json"}, {"flows", m.flows.size()}});
            if (a.geojson) {
                const fs::path gj = fs::path(a.out_dir) / "geojson" / (m.filter_tag + ".geojson");
                written.push_back(gj);
                flowmap::write_json_file(gj, flowmap::flows_to_geojson(m.flows));
            }
        }
        const fs::path index_path = scenes / "index.json";
        written.push_back(index_path);
        flowmap::write_json_file(index_path, {{"version", flowmap::kManifestVersion}, {"presets", index}}, 1);
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
        throw;
    }

    for (const auto& m : manifests) {
        std::printf("%-8s %4zu flows -> %s\n", m.filter_tag.c_str(), m.flows.size(),
                    (scenes / (m.filter_tag + ".json")).string().c_str());
    }
    return 0;
}

struct SynthArgs {
    std::size_t orders = 51371;
    std::size_t skus = 4000;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
};

int cmd_synth(const SynthArgs& a) {
    flowmap::SynthOptions opts;
    opts.orders = a.orders;
    opts.skus = a.skus;
    opts.seed = a.seed ? *a.seed : flowmap::seed_from_env(opts.seed);
    const auto corpus = flowmap::generate_corpus(opts);
    flowmap::write_corpus(corpus, a.out_dir);
    std::printf("seed %llu: %zu orders (%zu corrupt), %zu SKUs -> %s\n", static_cast<unsigned long long>(opts.seed),
                corpus.order_rows.size(), corpus.corrupt_rows, corpus.inventory_rows.size(), a.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bundled flow maps for fulfillment order data"};
    app.require_subcommand(1);

    IngestArgs ingest;
    auto* c_ingest = app.add_subcommand("ingest", "Aggregate orders into warehouse-to-region flows");
    c_ingest->add_option("--orders", ingest.orders, "Orders CSV")->required();
    c_ingest->add_option("--warehouses", ingest.warehouses, "Warehouses CSV")->required();
    c_ingest->add_option("--regions", ingest.regions, "Region centroid CSV")->required();
    c_ingest->add_option("--out", ingest.out, "Flows JSON to write")->required();
    c_ingest->add_option("--exclusions", ingest.exclusions, "Exclusion report (default: <out>.exclusions.json)");

    BundleArgs bundle;
    auto* c_bundle = app.add_subcommand("bundle", "Bundle flows and export GeoJSON");
    c_bundle->add_option("--flows", bundle.flows, "Flows JSON from `ingest`")->required();
    c_bundle->add_option("--config", bundle.config, "Pipeline config JSON");
    c_bundle->add_option("--out", bundle.out, "GeoJSON to write")->required();
    c_bundle->add_option("--report", bundle.report, "Pipeline report JSON");
    c_bundle->add_option("-j,--jobs", bundle.jobs, "Attraction worker threads")->check(CLI::Range(1, 64));

    HexbinArgs hexbin;
    auto* c_hexbin = app.add_subcommand("hexbin", "Bin order destinations into hexagons");
    c_hexbin->add_option("--orders", hexbin.orders, "Orders CSV")->required();
    c_hexbin->add_option("--radius-km", hexbin.radius_km, "Hexagon circumradius in km");
    c_hexbin->add_option("--out", hexbin.out, "Bins JSON to write")->required();

    SunburstArgs sunburst;
    auto* c_sunburst = app.add_subcommand("sunburst", "Inventory hierarchy of one warehouse");
    c_sunburst->add_option("--inventory", sunburst.inventory, "Inventory CSV")->required();
    c_sunburst->add_option("--warehouse", sunburst.warehouse, "Warehouse id")->required();
    c_sunburst->add_option("--out", sunburst.out, "Hierarchy JSON to write")->required();

    SceneArgs scene;
    auto* c_scene = app.add_subcommand("scene", "Compile one manifest per filter preset");
    c_scene->add_option("--orders", scene.orders, "Orders CSV");
    c_scene->add_option("--warehouses", scene.warehouses, "Warehouses CSV");
    c_scene->add_option("--regions", scene.regions, "Region centroid CSV");
    c_scene->add_option("--inventory", scene.inventory, "Inventory CSV");
    c_scene->add_option("--config", scene.config, "Pipeline config JSON");
    c_scene->add_option("--out-dir", scene.out_dir, "Output directory")->required();
    c_scene->add_option("-j,--jobs", scene.jobs, "Attraction worker threads per preset")->check(CLI::Range(1, 64));
    c_scene->add_flag("--parallel-presets", scene.parallel_presets, "Build presets concurrently");
    c_scene->add_flag("--geojson", scene.geojson, "Also write <out-dir>/geojson/<preset>.geojson");

    SynthArgs synth;
    auto* c_synth = app.add_subcommand("synth", "Write a synthetic order and inventory corpus");
    c_synth->add_option("--orders", synth.orders, "Number of order rows");
    c_synth->add_option("--skus", synth.skus, "Number of inventory records");
    c_synth->add_option("--seed", synth.seed, "RNG seed (default: $SCENE_SEED or 20250701)");
    c_synth->add_option("--out-dir", synth.out_dir, "Output directory")->required();

    std::string config_out;
    auto* c_config = app.add_subcommand("config", "Print the default pipeline config");
    c_config->add_option("--out", config_out, "Write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*c_ingest) return cmd_ingest(ingest);
        if (*c_bundle) return cmd_bundle(bundle);
        if (*c_hexbin) return cmd_hexbin(hexbin);
        if (*c_sunburst) return cmd_sunburst(sunburst);
        if (*c_scene) return cmd_scene(scene);
        if (*c_synth) return cmd_synth(synth);
        if (*c_config) {
            const json doc = flowmap::config_to_json(flowmap::PipelineConfig{});
            if (config_out.empty()) {
                std::cout << doc.dump(1) << '\n';
            } else {
                flowmap::write_json_file(config_out, doc, 1);
            }
            return 0;
        }
    } catch (const flowmap::GeometryError& e) {
        std::fprintf(stderr, "flowmap: pipeline error: %s\n", e.what());
        return kExitPipeline;
    } catch (const flowmap::Error& e) {
        std::fprintf(stderr, "flowmap: %s\n", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "flowmap: %s\n", e.what());
        return kExitPipeline;
    }
    return 0;
}
