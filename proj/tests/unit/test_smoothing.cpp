#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "flowmap/error.hpp"
#include "flowmap/smoothing.hpp"

using namespace flowmap;

namespace {

double turning(const std::vector<GridPoint>& p) {
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        const GridPoint a = p[i] - p[i - 1], b = p[i + 1] - p[i];
        sum += std::abs(std::atan2(a.cross(b), a.dot(b)));
    }
    return sum;
}

double max_chord_distance(const std::vector<GridPoint>& p) {
    const GridPoint d = p.back() - p.front();
    double m = 0.0;
    for (const auto& q : p) m = std::max(m, std::abs(d.cross(q - p.front())) / d.norm());
    return m;
}

double spacing_cv(const std::vector<GridPoint>& p) {
    std::vector<double> s;
    for (std::size_t i = 1; i < p.size(); ++i) s.push_back(distance(p[i - 1], p[i]));
    double mean = 0.0;
    for (double v : s) mean += v / s.size();
    double var = 0.0;
    for (double v : s) var += (v - mean) * (v - mean) / s.size();
    return std::sqrt(var) / mean;
}

std::vector<GridPoint> zigzag(int n) {
    std::vector<GridPoint> p;
    for (int i = 0; i < n; ++i) p.push_back({static_cast<double>(i), (i % 2) ? 1.0 : -1.0});
    p.front().y = p.back().y = 0.0;
    return p;
}

}  // namespace

TEST(GaussianPass, HandExample) {
    const auto out = gaussian_pass({{0, 0}, {1, 3}, {2, 0}}, 1, 0.55);
    EXPECT_DOUBLE_EQ(out[1].x, 1.0);
    EXPECT_DOUBLE_EQ(out[1].y, 0.45 * 3);
}

TEST(GaussianPass, CollinearAndTinyInputsUnchanged) {
    const std::vector<GridPoint> line{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    EXPECT_EQ(gaussian_pass(line, 5, 0.5), line);
    const std::vector<GridPoint> two{{0, 0}, {5, 1}};
    EXPECT_EQ(gaussian_pass(two, 5, 0.5), two);
}

TEST(GaussianPass, ShrinksVAndStaysConvex) {
    std::vector<GridPoint> v{{0, 0}, {1, -1}, {2, -2}, {3, -2.5}, {4, -2}, {5, -1}, {6, 0}};
    double len = polyline_length(v);
    double chord = max_chord_distance(v);
    for (int it = 0; it < 10; ++it) {
        v = gaussian_pass(v, 1, 0.45);
        EXPECT_LE(polyline_length(v), len);
        EXPECT_LE(max_chord_distance(v), chord + 1e-12);
        for (std::size_t i = 1; i + 1 < v.size(); ++i) EXPECT_GE((v[i] - v[i - 1]).cross(v[i + 1] - v[i]), 0.0);
        len = polyline_length(v);
        chord = max_chord_distance(v);
    }
    EXPECT_EQ(v.front(), (GridPoint{0, 0}));
    EXPECT_EQ(v.back(), (GridPoint{6, 0}));
}

TEST(CatmullRom, CountAndInterpolation) {
    const std::vector<GridPoint> pts{{0, 0}, {1, 2}, {3, 3}, {4, 0}};
    const auto out = catmull_rom_pass(pts, 10);
    ASSERT_EQ(out.size(), 31u);
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(out[i * 10], pts[i]);
}

TEST(CatmullRom, CollinearStaysCollinear) {
    const std::vector<GridPoint> pts{{0, 0}, {1, 0.5}, {1.5, 0.75}, {4, 2}, {4.2, 2.1}};
    for (const auto& p : catmull_rom_pass(pts, 8)) EXPECT_LT(std::abs(p.y - 0.5 * p.x), 1e-9);
}

TEST(CatmullRom, RepeatedPointsStayFinite) {
    const std::vector<GridPoint> pts{{0, 0}, {0, 0}, {1, 1}, {1, 1}, {2, 0}};
    for (const auto& p : catmull_rom_pass(pts, 4)) EXPECT_TRUE(std::isfinite(p.x) && std::isfinite(p.y));
}

TEST(Resample, StraightSpacing) {
    const auto out = resample_uniform(std::vector<GridPoint>{{0, 0}, {99, 0}}, 100);
    ASSERT_EQ(out.size(), 100u);
    for (int i = 0; i < 100; ++i) EXPECT_NEAR(out[i].x, i, 1e-12);
    EXPECT_EQ(out.back(), (GridPoint{99, 0}));
}

TEST(Resample, ArcLengthUniformOnRandomPolyline) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<GridPoint> p{{0, 0}};
    for (int i = 1; i < 30; ++i) p.push_back({i + 0.3 * u(rng), 2 * u(rng)});
    const auto out = resample_uniform(p, 100);
    EXPECT_EQ(out.front(), p.front());
    EXPECT_EQ(out.back(), p.back());
    // every output point lies on the input polyline at arc length i * L / 99
    const double L = polyline_length(p);
    std::vector<double> cum{0.0};
    for (std::size_t i = 1; i < p.size(); ++i) cum.push_back(cum.back() + distance(p[i - 1], p[i]));
    for (int i = 0; i < 100; ++i) {
        const double target = L * i / 99.0;
        std::size_t seg = std::min<std::size_t>(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin(), p.size() - 1);
        seg = std::max<std::size_t>(seg, 1);
        const double t = (target - cum[seg - 1]) / (cum[seg] - cum[seg - 1]);
        const GridPoint want = p[seg - 1] + (p[seg] - p[seg - 1]) * t;
        EXPECT_LT(distance(out[i], want), 1e-9 * L);
    }
}

TEST(Resample, DegeneratePathThrows) {
    EXPECT_THROW(resample_uniform(std::vector<GridPoint>{{1, 1}, {1, 1}, {1, 1}}, 100), GeometryError);
}

TEST(SmoothPipeline, StraightStaysStraight) {
    std::vector<GridPoint> line;
    for (int i = 0; i <= 64; ++i) line.push_back({3.0 + i * 0.5, 7.0 + i * 0.25});
    const auto out = smooth_pipeline(line);
    ASSERT_EQ(out.size(), 100u);
    EXPECT_EQ(out.front(), line.front());
    EXPECT_EQ(out.back(), line.back());
    for (const auto& p : out) EXPECT_LT(std::abs((p.y - 7.0) - 0.5 * (p.x - 3.0)), 1e-9);
    EXPECT_LT(spacing_cv(out), 1e-6);
}

TEST(SmoothPipeline, ZigzagCalmer) {
    const auto in = zigzag(65);
    const auto out = smooth_pipeline(in);
    ASSERT_EQ(out.size(), 100u);
    EXPECT_LT(turning(out), turning(in));
    EXPECT_EQ(out.front(), in.front());
    EXPECT_EQ(out.back(), in.back());
}

TEST(SmoothPipeline, AlwaysHundredFinitePoints) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0, 128);
    for (int n = 0; n < 20; ++n) {
        std::vector<GridPoint> p;
        for (int i = 0; i <= 64; ++i) p.push_back({u(rng), u(rng)});
        const auto out = smooth_pipeline(p);
        ASSERT_EQ(out.size(), 100u);
        for (const auto& q : out) ASSERT_TRUE(std::isfinite(q.x) && std::isfinite(q.y));
        EXPECT_EQ(out.front(), p.front());
        EXPECT_EQ(out.back(), p.back());
    }
}

TEST(SmoothingSchedule, DefaultsAndValidation) {
    const SmoothingSchedule s;
    EXPECT_EQ(s.gaussian_passes, (std::vector<GaussianPass>{{15, 0.55}, {10, 0.45}, {8, 0.35}, {4, 0.25}}));
    EXPECT_EQ(s.spline_densities, (std::vector<int>{10, 8, 4}));
    EXPECT_EQ(s.final_point_count, 100);
    EXPECT_NO_THROW(s.validate());
    SmoothingSchedule bad = s;
    bad.gaussian_passes[1].weight = 0.6;
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = s;
    bad.spline_densities = {10, 1, 4};
    EXPECT_THROW(bad.validate(), ConfigError);
}
