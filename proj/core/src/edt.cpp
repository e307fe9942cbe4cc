#include "flowmap/edt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "flowmap/error.hpp"

namespace flowmap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double DistanceField::max_distance() const {
    const auto& d = distance.data();
    return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

void squared_edt_1d(std::span<const double> f, std::span<double> out) {
    const int n = static_cast<int>(f.size());
    // Envelope over finite sites only, so +inf never enters the
    // intersection arithmetic.
    std::vector<int> v;
    std::vector<double> z;
    v.reserve(f.size());
    z.reserve(f.size() + 1);
    for (int q = 0; q < n; ++q) {
        if (!std::isfinite(f[q])) continue;
        const double fq = f[q] + static_cast<double>(q) * q;
        while (!v.empty()) {
            const int p = v.back();
            const double s = (fq - (f[p] + static_cast<double>(p) * p)) / (2.0 * (q - p));
            if (s <= z.back()) {
                v.pop_back();
                z.pop_back();
            } else {
                v.push_back(q);
                z.push_back(s);
                break;
            }
        }
        if (v.empty()) {
            v.push_back(q);
            z.clear();
            z.push_back(-kInf);
        }
    }
    if (v.empty()) {
        std::fill(out.begin(), out.end(), kInf);
        return;
    }
    std::size_t k = 0;
    for (int q = 0; q < n; ++q) {
        while (k + 1 < v.size() && z[k + 1] < q) ++k;
        const double d = q - v[k];
        out[q] = d * d + f[v[k]];
    }
}

DistanceField compute_edt(const Grid<std::uint8_t>& mask) {
    const int w = mask.width();
    const int h = mask.height();
    Grid<double> sq(w, h, kInf);
    bool any_site = false;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask.data()[i]) {
            sq.data()[i] = 0.0;
            any_site = true;
        }
    }
    if (!any_site) {
        throw GeometryError("mask covers the entire grid; no boundary to measure from");
    }

    std::vector<double> line(static_cast<std::size_t>(std::max(w, h)));
    std::vector<double> result(line.size());
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) line[y] = sq(x, y);
        squared_edt_1d(std::span(line).first(h), std::span(result).first(h));
        for (int y = 0; y < h; ++y) sq(x, y) = result[y];
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) line[x] = sq(x, y);
        squared_edt_1d(std::span(line).first(w), std::span(result).first(w));
        for (int x = 0; x < w; ++x) sq(x, y) = result[x];
    }

    DistanceField out{Grid<double>(w, h, 0.0), mask};
    for (std::size_t i = 0; i < sq.size(); ++i) {
        out.distance.data()[i] = std::sqrt(sq.data()[i]);
    }
    return out;
}

DistanceField compute_edt(const DensityField& density, double threshold_frac) {
    const double max_d = density.max_value();
    if (!(max_d > 0.0)) {
        throw GeometryError("density field is empty");
    }
    const double cut = threshold_frac * max_d;
    const auto& values = density.values;
    Grid<std::uint8_t> mask(values.width(), values.height(), 0);
    bool any = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values.data()[i] > cut) {
            mask.data()[i] = 1;
            any = true;
        }
    }
    if (!any) {
        throw GeometryError("threshold too high");
    }
    return compute_edt(mask);
}

}  // namespace flowmap
