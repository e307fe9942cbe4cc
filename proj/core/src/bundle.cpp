#include "flowmap/bundle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "flowmap/density.hpp"
#include "flowmap/error.hpp"

namespace flowmap {

ExclusionList default_exclusions() { return {{"WH-CA", "NV"}, {"WH-TX", "LA"}}; }

void BundleParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(std::string("invalid bundle parameters: ") + what);
    };
    require(grid_resolution >= 8, "grid_resolution must be >= 8");
    require(sigma > 0.0, "sigma must be positive");
    require(samples_per_edge >= 2, "samples_per_edge must be >= 2");
    require(subdivisions >= 2, "subdivisions must be >= 2");
    require(iterations >= 1, "iterations must be >= 1");
    require(alpha > 0.0, "alpha must be positive");
    require(tau_long > 0.0 && tau_short > 0.0, "tau_long and tau_short must be positive");
    require(tau_short < tau_long, "tau_short must be less than tau_long");
    require(long_km > 0.0 && bypass_km > 0.0, "long_km and bypass_km must be positive");
    require(bypass_km <= long_km, "bypass_km must not exceed long_km");
    require(density_threshold_frac > 0.0 && density_threshold_frac < 1.0,
            "density_threshold_frac must lie in (0, 1)");
    require(forward_dot_min > -1.0 && forward_dot_min < 1.0, "forward_dot_min must lie in (-1, 1)");
    require(projection_min < projection_max, "projection_min must be less than projection_max");
    require(long_bonus > 0.0 && short_factor > 0.0, "long_bonus and short_factor must be positive");
    require(cohesion_max > 0.0 && cohesion_max <= 1.0, "cohesion_max must lie in (0, 1]");
    require(short_neighbour_weight > 0.0 && short_neighbour_weight < 1.0,
            "short_neighbour_weight must lie in (0, 1)");
}

FlowClass classify_flow(const FlowEdge& flow, const BundleParams& params) {
    if (params.exclusions.contains({flow.origin_warehouse, flow.dest_region})) {
        return FlowClass::Excluded;
    }
    const double km = haversine_km(flow.origin, flow.dest_centroid);
    if (km > params.long_km) return FlowClass::Long;
    if (km < params.bypass_km) return FlowClass::Bypass;
    return FlowClass::Short;
}

double detour_ratio(const GridPoint& s, const GridPoint& t, const GridPoint& skel) {
    const double direct = distance(s, t);
    if (!(direct > 0.0)) {
        throw GeometryError("detour ratio of a zero-length edge");
    }
    const double via = distance(s, skel) + distance(skel, t);
    return std::max(0.0, (via - direct) / direct);
}

double bell_weight(int i, int k) {
    const double u = static_cast<double>(i) / k;
    return 4.0 * u * (1.0 - u);
}

bool passes_checks(const ControlPolyline& edge, int i, const SkeletonPoint& skel, const BundleParams& params) {
    if (edge.flow_class == FlowClass::Bypass || edge.flow_class == FlowClass::Excluded) return false;
    const int k = edge.subdivisions();
    if (i <= 0 || i >= k) return false;

    const GridPoint& s = edge.source();
    const GridPoint& t = edge.target();
    const GridPoint st = t - s;
    const double len_sq = st.norm_sq();
    if (!(len_sq > 0.0)) return false;

    // (a) bounded detour
    if (!(detour_ratio(s, t, skel.pos) < params.tau_for(edge.flow_class))) return false;

    // (b) ahead of the moving point along the edge direction
    const GridPoint to_skel = skel.pos - edge.points[i];
    const double to_skel_len = to_skel.norm();
    if (!(to_skel_len > 0.0)) return false;
    const double forward = to_skel.dot(st) / (to_skel_len * std::sqrt(len_sq));
    if (!(forward > params.forward_dot_min)) return false;

    // (c) projects within the edge's extent
    const double proj = (skel.pos - s).dot(st) / len_sq;
    return proj >= params.projection_min && proj <= params.projection_max;
}

namespace {

// Bounding box of the ellipse {X : |X-s| + |X-t| <= (1 + tau) |t-s|}; any
// point outside fails the detour check.
SearchBox detour_box(const GridPoint& s, const GridPoint& t, double tau) {
    const GridPoint st = t - s;
    const double d = st.norm();
    const double a = (1.0 + tau) * d / 2.0;
    const double c = d / 2.0;
    const double b = std::sqrt(std::max(0.0, a * a - c * c));
    const double cos_t = d > 0.0 ? st.x / d : 1.0;
    const double sin_t = d > 0.0 ? st.y / d : 0.0;
    const double hx = std::sqrt(a * a * cos_t * cos_t + b * b * sin_t * sin_t) + 1e-9;
    const double hy = std::sqrt(a * a * sin_t * sin_t + b * b * cos_t * cos_t) + 1e-9;
    const GridPoint mid = (s + t) * 0.5;
    return {mid.x - hx, mid.y - hy, mid.x + hx, mid.y + hy};
}

struct PolylineOutcome {
    std::size_t accepted = 0;
    std::vector<AttractionEvent> events;
};

void attract_polyline(ControlPolyline& poly, const SkeletonIndex& skeleton, const BundleParams& params,
                      bool record, PolylineOutcome& out) {
    if (poly.flow_class != FlowClass::Long && poly.flow_class != FlowClass::Short) return;
    const int k = poly.subdivisions();
    if (k < 2) return;
    const GridPoint s = poly.source();
    const GridPoint t = poly.target();
    if (s == t) return;
    const SearchBox box = detour_box(s, t, params.tau_for(poly.flow_class));
    const double gain = params.alpha * params.class_factor(poly.flow_class);

    const std::vector<GridPoint> before = poly.points;
    for (int i = 1; i < k; ++i) {
        const GridPoint p = before[i];
        const SkeletonPoint* hit = skeleton.nearest(
            p, box, [&](const SkeletonPoint& sp) { return passes_checks(poly, i, sp, params); });
        if (hit == nullptr) continue;
        const double scale = gain * bell_weight(i, k) * hit->importance;
        poly.points[i] = p + (hit->pos - p) * scale;
        ++out.accepted;
        if (record) {
            out.events.push_back({poly.flow_index, i, poly.flow_class, s, t, p, hit->pos, hit->importance});
        }
    }
}

}  // namespace

std::size_t attract_iteration(std::span<ControlPolyline> polylines, const SkeletonIndex& skeleton,
                              const BundleParams& params, const AttractOptions& options) {
    if (skeleton.empty()) return 0;
    const bool record = static_cast<bool>(options.observer);
    std::vector<PolylineOutcome> outcomes(polylines.size());

    const int workers = std::clamp(options.workers, 1, static_cast<int>(std::max<std::size_t>(1, polylines.size())));
    if (workers == 1) {
        for (std::size_t j = 0; j < polylines.size(); ++j) {
            attract_polyline(polylines[j], skeleton, params, record, outcomes[j]);
        }
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t j = static_cast<std::size_t>(w); j < polylines.size(); j += workers) {
                    attract_polyline(polylines[j], skeleton, params, record, outcomes[j]);
                }
            });
        }
    }

    std::size_t accepted = 0;
    for (const auto& o : outcomes) {
        accepted += o.accepted;
        if (record) {
            for (const auto& e : o.events) options.observer(e);
        }
    }
    return accepted;
}

ControlPolyline render_excluded_arc(const FlowEdge& flow, const GridMapping& mapping, int subdivisions,
                                    std::size_t flow_index) {
    const GridPoint s = mapping.project(flow.origin);
    const GridPoint t = mapping.project(flow.dest_centroid);
    const GridPoint chord = t - s;
    const double len = chord.norm();
    if (!(len > 0.0)) {
        throw GeometryError("degenerate edge");
    }
    const GridPoint left{-chord.y / len, chord.x / len};
    const GridPoint ctrl = (s + t) * 0.5 + left * (0.15 * len);

    ControlPolyline poly{flow_index, FlowClass::Excluded, {}};
    poly.points.resize(static_cast<std::size_t>(subdivisions) + 1);
    poly.points.front() = s;
    for (int i = 1; i < subdivisions; ++i) {
        const double u = static_cast<double>(i) / subdivisions;
        const double a = (1.0 - u) * (1.0 - u);
        const double b = 2.0 * u * (1.0 - u);
        const double c = u * u;
        poly.points[i] = s * a + ctrl * b + t * c;
    }
    poly.points.back() = t;
    return poly;
}

BundleResult bundle(std::span<const FlowEdge> flows, const BundleParams& params, const AttractOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    params.validate();
    if (flows.empty()) {
        throw GeometryError("no edges");
    }

    std::vector<GeoPoint> endpoints;
    endpoints.reserve(flows.size() * 2);
    for (const auto& f : flows) {
        if (!is_valid(f.origin) || !is_valid(f.dest_centroid)) {
            throw GeometryError("flow " + f.origin_warehouse + "->" + f.dest_region + " has invalid coordinates");
        }
        endpoints.push_back(f.origin);
        endpoints.push_back(f.dest_centroid);
    }
    BundleResult result{GridMapping::fit(endpoints, params.grid_resolution), {}, {}, {}, {}};
    const GridMapping& mapping = result.mapping;
    auto& report = result.report;
    report.flow_count = flows.size();

    result.clusters = build_clusters(flows);
    report.cluster_count = result.clusters.size();

    auto& polylines = result.polylines;
    polylines.reserve(flows.size());
    for (std::size_t j = 0; j < flows.size(); ++j) {
        const FlowClass cls = classify_flow(flows[j], params);
        ++report.class_counts[std::string(to_string(cls))];
        if (cls == FlowClass::Excluded) {
            polylines.push_back(render_excluded_arc(flows[j], mapping, params.subdivisions, j));
            continue;
        }
        const GridPoint s = mapping.project(flows[j].origin);
        const GridPoint t = mapping.project(flows[j].dest_centroid);
        if (s == t) {
            throw GeometryError("degenerate edge");
        }
        polylines.push_back({j, cls, subdivide(s, t, params.subdivisions)});
    }

    const DensityField density = build_density_field(flows, mapping, params.sigma, params.samples_per_edge);
    const DistanceField dist = compute_edt(density, params.density_threshold_frac);
    report.mask_cells = static_cast<std::size_t>(std::count(dist.mask.data().begin(), dist.mask.data().end(), 1));
    result.skeleton = extract_skeleton(dist);
    report.skeleton_size = result.skeleton.size();
    const SkeletonIndex index(result.skeleton, params.grid_resolution);

    const CohesionParams cohesion{params.cohesion_max, params.short_neighbour_weight};
    std::vector<std::vector<GridPoint>> snapshot(polylines.size());
    for (int t = 1; t <= params.iterations; ++t) {
        for (std::size_t j = 0; j < polylines.size(); ++j) snapshot[j] = polylines[j].points;

        report.accepted_attractions += attract_iteration(polylines, index, params, options);
        cohesion_step(polylines, result.clusters, t, params.iterations, cohesion);

        double moved = 0.0;
        std::size_t counted = 0;
        for (std::size_t j = 0; j < polylines.size(); ++j) {
            if (polylines[j].flow_class == FlowClass::Excluded) continue;
            const auto& pts = polylines[j].points;
            for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
                moved += distance(pts[i], snapshot[j][i]);
                ++counted;
            }
        }
        report.iteration_displacement.push_back(counted > 0 ? moved / static_cast<double>(counted) : 0.0);
    }
    update_centroids(result.clusters, polylines);

    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return result;
}

std::future<BundleResult> bundle_async(std::vector<FlowEdge> flows, BundleParams params, int workers) {
    return std::async(std::launch::async, [flows = std::move(flows), params = std::move(params), workers] {
        return bundle(flows, params, AttractOptions{workers, {}});
    });
}

}  // namespace flowmap
