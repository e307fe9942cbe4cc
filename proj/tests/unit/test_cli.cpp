#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>

#include "fixtures.hpp"
#include "flowmap/json_io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run flowmap_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" FLOWMAP_CLI "' " + args + " 2>&1";
    Run r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (p == nullptr) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = ::pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

// One synthetic corpus shared by the tests that need realistic data.
const fs::path& corpus_dir() {
    static fixtures::TempDir dir("cli-corpus");
    static const bool made = [] {
        return flowmap_cli("synth --out-dir '" + dir.path().string() + "'").code == 0;
    }();
    EXPECT_TRUE(made);
    return dir.path();
}

std::string data_args() {
    const auto d = corpus_dir().string();
    return "--orders '" + d + "/orders.csv' --warehouses '" + d + "/warehouses.csv' --regions '" + d + "/regions.csv'";
}

const char* kOrderHeader =
    "order_id,shipper_lon,shipper_lat,dest_lon,dest_lat,quantity,value_usd,category_lvl1,category_lvl2,"
    "category_lvl3,date\n";

}  // namespace

TEST(Cli, IngestSyntheticCorpusReductionRatio) {
    fixtures::TempDir out("cli-ingest");
    const auto r = flowmap_cli("ingest " + data_args() + " --out '" + (out / "flows.json").string() + "'");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("rows: 51371"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("flows: 202"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("reduction ratio: 254.3x"), std::string::npos) << r.out;
    EXPECT_EQ(flowmap::read_json_file(out / "flows.json").size(), 202u);
    EXPECT_TRUE(fs::exists(out / "flows.exclusions.json"));
}

TEST(Cli, IngestEmptyOrdersExitsTwo) {
    fixtures::TempDir out("cli-empty");
    write_file(out / "orders.csv", "");
    const auto d = corpus_dir().string();
    const auto r = flowmap_cli("ingest --orders '" + (out / "orders.csv").string() + "' --warehouses '" + d +
                               "/warehouses.csv' --regions '" + d + "/regions.csv' --out '" +
                               (out / "f.json").string() + "'");
    EXPECT_EQ(r.code, 2) << r.out;
}

TEST(Cli, IngestFourDistinctPairsRatioOne) {
    fixtures::TempDir out("cli-four");
    write_file(out / "wh.csv", "id,lon,lat,name\nWH-A,0,0,A\nWH-B,10,0,B\n");
    write_file(out / "rg.csv", "label,lon,lat\nR1,0,10\nR2,10,10\n");
    write_file(out / "orders.csv", std::string(kOrderHeader) +
                                       "1,0,0,0,10,1,1.00,Toys,G,P,2025-07-01\n"
                                       "2,0,0,10,10,1,1.00,Toys,G,P,2025-07-01\n"
                                       "3,10,0,0,10,1,1.00,Toys,G,P,2025-07-01\n"
                                       "4,10,0,10,10,1,1.00,Toys,G,P,2025-07-01\n");
    const auto r = flowmap_cli("ingest --orders '" + (out / "orders.csv").string() + "' --warehouses '" +
                               (out / "wh.csv").string() + "' --regions '" + (out / "rg.csv").string() +
                               "' --out '" + (out / "f.json").string() + "'");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("reduction ratio: 1.0x"), std::string::npos) << r.out;
}

TEST(Cli, BundleOneFlowAndReport) {
    fixtures::TempDir out("cli-bundle");
    write_file(out / "flows.json",
               R"([{"origin_warehouse":"WH-CA","origin":[-117.6,34.06],"dest_region":"NY",)"
               R"("dest_centroid":[-75.53,42.95],"order_count":12}])");
    const auto r = flowmap_cli("bundle --flows '" + (out / "flows.json").string() + "' --out '" +
                               (out / "b.geojson").string() + "' --report '" + (out / "report.json").string() + "'");
    ASSERT_EQ(r.code, 0) << r.out;
    const json gj = flowmap::read_json_file(out / "b.geojson");
    ASSERT_EQ(gj["features"].size(), 1u);
    EXPECT_EQ(gj["features"][0]["geometry"]["coordinates"].size(), 100u);
    EXPECT_EQ(gj["features"][0]["properties"]["class"], "long");
    const json rep = flowmap::read_json_file(out / "report.json");
    EXPECT_TRUE(rep.contains("wall_time_ms"));
    EXPECT_EQ(rep["iteration_displacement"].size(), 15u);
}

TEST(Cli, BundleBadConfigExitsTwoNamingInvariant) {
    fixtures::TempDir out("cli-badcfg");
    write_file(out / "flows.json",
               R"([{"origin_warehouse":"W","origin":[0,0],"dest_region":"R","dest_centroid":[5,5],"order_count":1}])");
    write_file(out / "cfg.json", R"({"tau_short": 0.5})");
    const auto r = flowmap_cli("bundle --flows '" + (out / "flows.json").string() + "' --config '" +
                               (out / "cfg.json").string() + "' --out '" + (out / "b.geojson").string() + "'");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("tau_short must be less than tau_long"), std::string::npos) << r.out;
    EXPECT_FALSE(fs::exists(out / "b.geojson"));
}

TEST(Cli, BundleCoincidentEndpointsExitsThree) {
    fixtures::TempDir out("cli-degenerate");
    write_file(out / "flows.json",
               R"([{"origin_warehouse":"W","origin":[1,1],"dest_region":"R","dest_centroid":[1,1],"order_count":1}])");
    const auto r = flowmap_cli("bundle --flows '" + (out / "flows.json").string() + "' --out '" +
                               (out / "b.geojson").string() + "'");
    EXPECT_EQ(r.code, 3) << r.out;
}

TEST(Cli, BundleGeojsonRoundTripsBitExactly) {
    fixtures::TempDir out("cli-roundtrip");
    ASSERT_EQ(flowmap_cli("ingest " + data_args() + " --out '" + (out / "flows.json").string() + "'").code, 0);
    ASSERT_EQ(flowmap_cli("bundle --flows '" + (out / "flows.json").string() + "' --out '" +
                          (out / "a.geojson").string() + "'")
                  .code,
              0);
    const std::string text = slurp(out / "a.geojson");
    const json doc = json::parse(text);
    EXPECT_EQ(doc.dump() + "\n", text);
    // every coordinate sits on the 1e-9 degree grid
    std::size_t checked = 0;
    for (const auto& f : doc["features"]) {
        for (const auto& p : f["geometry"]["coordinates"]) {
            for (const auto& q : p) {
                const double v = q.get<double>();
                EXPECT_EQ(v, flowmap::quantize_coord(v));
                ++checked;
            }
        }
        for (const char* key : {"origin", "dest_centroid"}) {
            for (const auto& q : f["properties"][key]) EXPECT_EQ(q.get<double>(), flowmap::quantize_coord(q.get<double>()));
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(Cli, HexbinConservesAndRejectsZeroRadius) {
    fixtures::TempDir out("cli-hex");
    const auto d = corpus_dir().string();
    const auto r = flowmap_cli("hexbin --orders '" + d + "/orders.csv' --radius-km 25 --out '" +
                               (out / "hex.json").string() + "'");
    ASSERT_EQ(r.code, 0) << r.out;
    const json doc = flowmap::read_json_file(out / "hex.json");
    std::int64_t total = 0;
    for (const auto& b : doc["bins"]) total += b["count"].get<std::int64_t>();
    EXPECT_EQ(total, doc["order_count"].get<std::int64_t>());
    EXPECT_EQ(flowmap_cli("hexbin --orders '" + d + "/orders.csv' --radius-km 0 --out '" + (out / "z.json").string() + "'").code, 2);
}

TEST(Cli, SunburstUnknownWarehouseExitsTwo) {
    fixtures::TempDir out("cli-sun");
    const auto d = corpus_dir().string();
    const auto ok = flowmap_cli("sunburst --inventory '" + d + "/inventory.csv' --warehouse WH-NJ --out '" +
                                (out / "s.json").string() + "'");
    ASSERT_EQ(ok.code, 0) << ok.out;
    EXPECT_EQ(flowmap::read_json_file(out / "s.json")["root"]["depth"], 0);
    const auto bad = flowmap_cli("sunburst --inventory '" + d + "/inventory.csv' --warehouse WH-XX --out '" +
                                 (out / "t.json").string() + "'");
    EXPECT_EQ(bad.code, 2);
}

TEST(Cli, SceneWritesFivePresetsThatValidate) {
    fixtures::TempDir out("cli-scene");
    const auto d = corpus_dir().string();
    const auto r = flowmap_cli("scene " + data_args() + " --inventory '" + d + "/inventory.csv' --out-dir '" +
                               out.path().string() + "'");
    ASSERT_EQ(r.code, 0) << r.out;
    std::size_t per_wh = 0, all = 0, manifests = 0;
    for (const auto& e : fs::directory_iterator(out / "scenes")) {
        if (e.path().filename() == "index.json") continue;
        ++manifests;
        const json m = flowmap::read_json_file(e.path());
        (m["filter_tag"] == "all" ? all : per_wh) += m["flows"].size();
    }
    EXPECT_EQ(manifests, 5u);
    EXPECT_EQ(all, 202u);
    EXPECT_EQ(per_wh, all);

    if (std::system("python3 -c 'import jsonschema, referencing' >/dev/null 2>&1") != 0) {
        GTEST_SKIP() << "python3 jsonschema unavailable";
    }
    const std::string validate = "python3 '" FLOWMAP_SOURCE_DIR "/docs/schemas/validate.py' manifest '" +
                                 out.path().string() + "'/scenes/[!i]*.json >/dev/null";
    EXPECT_EQ(std::system(validate.c_str()), 0);
}

TEST(Cli, ScenePipelineFailureExitsThreeAndLeavesNothing) {
    fixtures::TempDir out("cli-scene-fail");
    // a region centred on the warehouse gives a zero-length flow
    write_file(out / "wh.csv", "id,lon,lat,name\nWH-A,0,0,A\n");
    write_file(out / "rg.csv", "label,lon,lat\nHOME,0,0\nFAR,10,10\n");
    write_file(out / "inv.csv", "warehouse_id,sku,stock,category_lvl1,category_lvl2,category_lvl3\nWH-A,S,1,T,G,P\n");
    write_file(out / "orders.csv", std::string(kOrderHeader) +
                                       "1,0,0,0.1,0.1,1,1.00,Toys,G,P,2025-07-01\n"
                                       "2,0,0,10,10,1,1.00,Toys,G,P,2025-07-01\n");
    const auto p = out.path().string();
    const auto r = flowmap_cli("scene --orders '" + p + "/orders.csv' --warehouses '" + p + "/wh.csv' --regions '" +
                               p + "/rg.csv' --inventory '" + p + "/inv.csv' --out-dir '" + p + "/out'");
    EXPECT_EQ(r.code, 3) << r.out;
    EXPECT_FALSE(fs::exists(out / "out/scenes/all.json"));
    EXPECT_FALSE(fs::exists(out / "out/scenes/WH-A.json"));
}

TEST(Cli, SceneIsByteDeterministicAcrossModes) {
    fixtures::TempDir a("cli-det-a"), b("cli-det-b");
    const auto d = corpus_dir().string();
    const std::string common = "scene " + data_args() + " --inventory '" + d + "/inventory.csv'";
    ASSERT_EQ(flowmap_cli(common + " --out-dir '" + a.path().string() + "'").code, 0);
    ASSERT_EQ(flowmap_cli(common + " --parallel-presets -j 3 --out-dir '" + b.path().string() + "'").code, 0);
    for (const char* tag : {"all", "WH-CA", "WH-NJ", "WH-TX", "WH-IL"}) {
        const std::string name = std::string("scenes/") + tag + ".json";
        EXPECT_EQ(slurp(a / name), slurp(b / name)) << tag;
    }
}

TEST(Cli, SynthSeedFlagMatchesEnvironment) {
    fixtures::TempDir a("cli-seed-a"), b("cli-seed-b");
    ASSERT_EQ(flowmap_cli("synth --orders 300 --skus 20 --seed 77 --out-dir '" + a.path().string() + "'").code, 0);
    ASSERT_EQ(flowmap_cli("synth --orders 300 --skus 20 --out-dir '" + b.path().string() + "'", "SCENE_SEED=77").code, 0);
    EXPECT_EQ(slurp(a / "orders.csv"), slurp(b / "orders.csv"));
    EXPECT_EQ(slurp(a / "inventory.csv"), slurp(b / "inventory.csv"));
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(flowmap_cli("").code, 2);
    EXPECT_EQ(flowmap_cli("ingest --orders x.csv").code, 2);
    EXPECT_EQ(flowmap_cli("bundle --flows /nonexistent/flows.json --out /tmp/x.geojson").code, 2);
    EXPECT_EQ(flowmap_cli("--help").code, 0);
}

TEST(Cli, DefaultConfigFileMatchesBuiltInDefaults) {
    const auto r = flowmap_cli("config");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out), flowmap::read_json_file(FLOWMAP_SOURCE_DIR "/data/default_config.json"));
}
