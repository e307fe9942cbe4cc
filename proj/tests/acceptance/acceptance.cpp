// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Runs against the library (and the CLI when it is built).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fixtures.hpp"
#include "flowmap/bundle.hpp"
#include "flowmap/density.hpp"
#include "flowmap/edt.hpp"
#include "flowmap/hexbin.hpp"
#include "flowmap/ingest.hpp"
#include "flowmap/inventory.hpp"
#include "flowmap/json_io.hpp"
#include "flowmap/scene.hpp"
#include "flowmap/skeleton.hpp"
#include "flowmap/synth.hpp"
#include "oracles.hpp"

using namespace flowmap;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Shared synthetic scene: the default 51,371-order corpus written to disk.
struct Scene {
    fixtures::TempDir dir{"acceptance"};
    SynthCorpus corpus;
    SceneInputs inputs;
    ExclusionReport parse_report;
    std::vector<FlowEdge> flows;
    ExclusionReport region_report;

    Scene() {
        corpus = generate_corpus(SynthOptions{});
        write_corpus(corpus, dir.path());
        std::ifstream orders(dir / "orders.csv");
        auto parsed = parse_orders(orders);
        parse_report = parsed.report;
        std::ifstream wh(dir / "warehouses.csv");
        std::ifstream rg(dir / "regions.csv");
        std::ifstream inv(dir / "inventory.csv");
        inputs.orders = std::move(parsed.orders);
        inputs.warehouses = parse_warehouses(wh);
        inputs.regions = parse_regions(rg);
        inputs.inventory = parse_inventory(inv).records;
        auto agg = aggregate_flows(inputs.orders, inputs.warehouses, inputs.regions,
                                   nearest_centroid_assigner(inputs.regions));
        flows = std::move(agg.flows);
        region_report = std::move(agg.report);
    }
};

Scene& scene() {
    static Scene s;
    return s;
}

Outcome edt_oracle() {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> density(0.2, 0.95);
    std::size_t mismatched = 0;
    const auto t0 = Clock::now();
    for (int trial = 0; trial < 100; ++trial) {
        const int n = trial < 50 ? 16 : 32;
        Grid<std::uint8_t> mask(n, n, 0);
        std::bernoulli_distribution on(density(rng));
        for (auto& c : mask.data()) c = on(rng);
        mask(static_cast<int>(rng() % n), static_cast<int>(rng() % n)) = 0;
        const auto got = compute_edt(mask).distance;
        const auto want = oracle::brute_force_edt(mask);
        for (std::size_t i = 0; i < want.size(); ++i) mismatched += got.data()[i] != want.data()[i];
    }
    const double secs = seconds_since(t0);
    return {mismatched == 0 && secs < 1.0,
            fmt("100 masks (50 of 16x16, 50 of 32x32): %zu mismatched cells, %.3f s incl. brute force", mismatched, secs)};
}

Outcome density_oracle() {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> pos(0.0, 32.0), weight(1.0, 10.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<WeightedSegment> segs;
        std::vector<oracle::Segment> ref;
        const int n = 1 + trial % 5;
        for (int e = 0; e < n; ++e) {
            const double x0 = pos(rng), y0 = pos(rng), x1 = pos(rng), y1 = pos(rng), w = weight(rng);
            segs.push_back({{x0, y0}, {x1, y1}, w});
            ref.push_back({x0, y0, x1, y1, w});
        }
        const auto got = build_density_field(segs, 32, 1.5, 11).values;
        const auto want = oracle::direct_density(ref, 32, 1.5, 11);
        for (std::size_t i = 0; i < want.size(); ++i) worst = std::max(worst, std::abs(got.data()[i] - want.data()[i]));
    }
    return {worst <= 1e-6, fmt("50 random sets of 1-5 edges on 32x32: max |error| %.3g (limit 1e-6)", worst)};
}

Outcome detour_soundness() {
    const auto& flows = scene().flows;
    std::size_t events = 0, violations = 0;
    AttractOptions opts;
    opts.observer = [&](const AttractionEvent& e) {
        ++events;
        const FlowClass expected = classify_flow(flows[e.flow_index], BundleParams{});
        const double tau = expected == FlowClass::Long ? 0.4 : 0.15;
        const double ratio = oracle::detour(e.source.x, e.source.y, e.target.x, e.target.y, e.skeleton.x, e.skeleton.y);
        if (e.flow_class != expected || !(ratio < tau) || expected == FlowClass::Bypass ||
            expected == FlowClass::Excluded) {
            ++violations;
        }
    };
    const auto r = bundle(flows, BundleParams{}, opts);
    return {violations == 0 && events > 0 && events == r.report.accepted_attractions,
            fmt("%zu flows, %zu accepted attractions observed, %zu violate the detour bound", flows.size(), events,
                violations)};
}

Outcome endpoint_pinning() {
    const auto& flows = scene().flows;
    const auto compiled = compile_flows(flows, PipelineConfig{});
    const auto raw = bundle(flows, BundleParams{});
    std::size_t bad = 0;
    for (std::size_t j = 0; j < flows.size(); ++j) {
        const GridPoint s = raw.mapping.project(flows[j].origin);
        const GridPoint t = raw.mapping.project(flows[j].dest_centroid);
        bad += raw.polylines[j].points.front() != s || raw.polylines[j].points.back() != t;
        bad += compiled.grid_paths[j].front() != s || compiled.grid_paths[j].back() != t;
        bad += compiled.flows[j].bundled.front() != quantize(flows[j].origin);
        bad += compiled.flows[j].bundled.back() != quantize(flows[j].dest_centroid);
    }
    return {bad == 0 && compiled.flows.size() == flows.size(),
            fmt("%zu flows through bundling, smoothing and resampling: %zu endpoint mismatches", flows.size(), bad)};
}

Outcome bell_curve() {
    const int k = BundleParams{}.subdivisions;
    const bool exact = bell_weight(0, k) == 0.0 && bell_weight(k, k) == 0.0 && bell_weight(k / 2, k) == 1.0;
    const auto r = bundle(scene().flows, BundleParams{});
    auto polys = r.polylines;
    const auto before = polys;
    std::size_t endpoint_events = 0;
    AttractOptions opts;
    opts.observer = [&](const AttractionEvent& e) { endpoint_events += e.control_index == 0 || e.control_index == k; };
    const SkeletonIndex index(r.skeleton, BundleParams{}.grid_resolution);
    const auto accepted = attract_iteration(polys, index, BundleParams{}, opts);
    std::size_t moved = 0;
    for (std::size_t j = 0; j < polys.size(); ++j) {
        moved += polys[j].points.front() != before[j].points.front() || polys[j].points.back() != before[j].points.back();
    }
    return {exact && moved == 0 && endpoint_events == 0 && accepted > 0,
            fmt("phi(0)=%g phi(k)=%g phi(k/2)=%g; %zu attractions, %zu endpoints moved", bell_weight(0, k),
                bell_weight(k, k), bell_weight(k / 2, k), accepted, moved)};
}

Outcome performance() {
    const auto& flows = scene().flows;
    double worst = 0.0;
    for (int run = 0; run < 3; ++run) {
        const auto t0 = Clock::now();
        const auto compiled = compile_flows(flows, PipelineConfig{});
        worst = std::max(worst, seconds_since(t0));
        if (compiled.flows.size() != flows.size()) return {false, "wrong flow count"};
    }
    return {worst <= 2.5, fmt("%zu flows, 128x128 grid, T=15, full smoothing: slowest of 3 runs %.3f s "
                              "(limit 2.5 s; 0.5 s target %s)",
                              flows.size(), worst, worst <= 0.5 ? "met" : "missed")};
}

Outcome aggregation_conservation() {
    auto& s = scene();
    std::int64_t in_flows = 0;
    for (const auto& f : s.flows) in_flows += f.order_count;
    const auto excluded = static_cast<std::int64_t>(s.parse_report.excluded() + s.region_report.excluded());
    const auto og = oracle::group_orders_csv((s.dir / "orders.csv").string(), s.inputs.warehouses, s.inputs.regions);
    bool groups_match = og.counts.size() == s.flows.size();
    for (const auto& f : s.flows) {
        const auto it = og.counts.find({f.origin_warehouse, f.dest_region});
        groups_match = groups_match && it != og.counts.end() && it->second == f.order_count;
    }
    const double ratio = static_cast<double>(s.parse_report.rows_read) / static_cast<double>(s.flows.size());
    std::string printed = "n/a";
    bool ratio_ok = true;
#ifdef FLOWMAP_CLI
    {
        const std::string cmd = std::string("'" FLOWMAP_CLI "' ingest --orders '") + (s.dir / "orders.csv").string() +
                                "' --warehouses '" + (s.dir / "warehouses.csv").string() + "' --regions '" +
                                (s.dir / "regions.csv").string() + "' --out '" + (s.dir / "flows.json").string() +
                                "' 2>&1";
        std::string out;
        if (FILE* p = ::popen(cmd.c_str(), "r")) {
            char buf[1024];
            while (std::fgets(buf, sizeof buf, p)) out += buf;
            ::pclose(p);
        }
        std::smatch m;
        ratio_ok = std::regex_search(out, m, std::regex(R"(reduction ratio: ([0-9.]+)x)")) &&
                   m[1].str() == fmt("%.1f", ratio);
        printed = ratio_ok ? m[1].str() + "x" : "mismatch";
    }
#endif
    const bool pass = in_flows + excluded == 51371 && og.rows == 51371 && groups_match && ratio_ok;
    return {pass, fmt("%lld in flows + %lld excluded = %lld rows; %zu flows vs %zu oracle groups (%s); ratio %.1f, "
                      "CLI printed %s",
                      static_cast<long long>(in_flows), static_cast<long long>(excluded),
                      static_cast<long long>(in_flows + excluded), s.flows.size(), og.counts.size(),
                      groups_match ? "identical" : "DIFFER", ratio, printed.c_str())};
}

Outcome hex_conservation() {
    auto& s = scene();
    const auto assign = nearest_centroid_assigner(s.inputs.regions);
    std::vector<OrderRecord> included;
    for (const auto& o : s.inputs.orders)
        if (assign(o.destination)) included.push_back(o);
    const GeoPoint anchor = destination_centroid(included);
    std::string detail;
    bool pass = true;
    for (double radius : {10.0, 25.0, 50.0}) {
        const HexGrid grid{radius, anchor};
        const auto bins = hex_binning(included, grid);
        struct Hash {
            std::size_t operator()(const std::pair<int, int>& k) const {
                return std::hash<long long>()((static_cast<long long>(k.first) << 32) ^ static_cast<unsigned>(k.second));
            }
        };
        std::unordered_map<std::pair<int, int>, std::int64_t, Hash> want;
        for (const auto& o : included) {
            const auto a = oracle::nearest_hex(o.destination, grid);
            ++want[{a.q, a.r}];
        }
        std::int64_t total = 0;
        bool match = bins.size() == want.size();
        for (const auto& b : bins) {
            total += b.count;
            const auto it = want.find({b.axial.q, b.axial.r});
            match = match && it != want.end() && it->second == b.count;
        }
        pass = pass && match && total == static_cast<std::int64_t>(included.size());
        detail += fmt("%s%g km: %lld in %zu bins%s", detail.empty() ? "" : "; ", radius, static_cast<long long>(total),
                      bins.size(), match ? "" : " (oracle DIFFERS)");
    }
    return {pass, fmt("%zu included orders; ", included.size()) + detail};
}

Outcome sunburst_conservation() {
    auto& s = scene();
    std::size_t nodes = 0, bad_sum = 0, bad_frac = 0;
    std::function<void(const SunburstNode&, const SunburstNode&)> walk = [&](const SunburstNode& n,
                                                                             const SunburstNode& root) {
        ++nodes;
        if (n.depth < 3) {
            std::int64_t sum = 0;
            double frac = 0.0;
            for (const auto& c : n.children) {
                sum += c.stock_total;
                frac += fraction_of_root(c, root);
            }
            bad_sum += sum != n.stock_total;
            bad_frac += std::abs(frac - fraction_of_root(n, root)) > 1e-9;
        }
        for (const auto& c : n.children) walk(c, root);
    };
    double root_frac_err = 0.0;
    for (const auto& w : s.inputs.warehouses) {
        const auto root = build_hierarchy(s.inputs.inventory, w.id);
        walk(root, root);
        double f = 0.0;
        for (const auto& c : root.children) f += fraction_of_root(c, root);
        root_frac_err = std::max(root_frac_err, std::abs(f - 1.0));
    }
    return {s.inputs.inventory.size() == 4000 && bad_sum == 0 && bad_frac == 0 && root_frac_err <= 1e-9,
            fmt("%zu records, %zu nodes over 4 warehouses: %zu sum mismatches, %zu fraction mismatches, "
                "max |sum(fractions)-1| %.2g",
                s.inputs.inventory.size(), nodes, bad_sum, bad_frac, root_frac_err)};
}

Outcome convergence() {
    const auto r = bundle(scene().flows, BundleParams{});
    const auto& d = r.report.iteration_displacement;
    if (d.size() != 15) return {false, "expected 15 iterations"};
    double early = 0.0, late = 0.0;
    for (int t = 0; t < 10; ++t) early += d[t] / 10.0;
    for (int t = 10; t < 15; ++t) late += d[t] / 5.0;
    return {late < early, fmt("mean displacement iterations 1-10: %.4f cells, 11-15: %.4f cells", early, late)};
}

Outcome determinism() {
    // two complete runs from generation onwards, with different worker counts
    auto run = [](int workers) {
        const auto in = fixtures::scene_inputs(generate_corpus(SynthOptions{}));
        std::vector<std::string> out;
        for (const auto& tag : filter_presets(in.warehouses)) {
            out.push_back(manifest_to_json(build_manifest(in, tag, PipelineConfig{}, {workers, {}})).dump());
        }
        return out;
    };
    const auto a = run(1);
    const auto b = run(4);
    std::size_t differing = 0, bytes = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        differing += a[i] != b[i];
        bytes += a[i].size();
    }
    return {a.size() == 5 && differing == 0,
            fmt("%zu manifests (%zu bytes), 1 vs 4 workers: %zu differ", a.size(), bytes, differing)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"EDT oracle equivalence", edt_oracle},
        {"Density oracle", density_oracle},
        {"Detour-constraint soundness", detour_soundness},
        {"Endpoint pinning", endpoint_pinning},
        {"Bell-curve property", bell_curve},
        {"Performance", performance},
        {"Aggregation conservation", aggregation_conservation},
        {"Hex conservation", hex_conservation},
        {"Sunburst conservation", sunburst_conservation},
        {"Convergence trend", convergence},
        {"Determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
