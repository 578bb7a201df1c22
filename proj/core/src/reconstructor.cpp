// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#include "afr/reconstructor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace afr {

namespace {

constexpr double kOcclusionBand = 0.01;  // relative depth slack for rejection

double clamp(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

FilterParams local_filter_params(double density, double g_s, double g_t,
                                 const ReconstructorParams& p) {
    FilterParams f;
    f.sigma_s = clamp(p.c_s / std::sqrt(std::max(density, p.d_floor)), p.sigma_s_min,
                      p.sigma_s_max);
    f.sigma_t = clamp(p.c_t * (g_s + p.eps_g) / (g_t + p.eps_g), p.sigma_t_min, p.sigma_t_max);
    return f;
}

std::vector<Contribution> occlusion_reject(const std::vector<Contribution>& contributions) {
    std::vector<Contribution> kept;
    kept.reserve(contributions.size());
    for (const Contribution& c : contributions) {
        bool occluded = false;
        for (const Contribution& other : contributions) {
            if (other.occluder && other.t > c.t &&
                other.depth < (1.0 - kOcclusionBand) * c.depth) {
                occluded = true;
                break;
            }
        }
        if (!occluded) kept.push_back(c);
    }
    return kept;
}

namespace {

struct Projected {
    double u, v, depth, t;
    double sigma_s = 0.0;
    double w_t = 0.0;     // temporal weight at t_now
    bool active = true;   // within the 3*sigma_t temporal support
    Color color;
};

}  // namespace

FrameImage reconstruct(const DeepBuffer& buffer, const RefreshMetadata& meta,
                       const CameraPath& path, double t_now, const ReconstructorParams& p,
                       const Color& background) {
    const int width = buffer.width();
    const int height = buffer.height();
    const std::size_t pixel_count = static_cast<std::size_t>(width) * height;

    // Per-pixel tile lookup and per-tile filter parameters.
    std::vector<std::int32_t> tile_of(pixel_count, -1);
    std::vector<FilterParams> filters(meta.tiles.size());
    for (std::size_t i = 0; i < meta.tiles.size(); ++i) {
        const TileRecord& rec = meta.tiles[i];
        filters[i] = local_filter_params(rec.density, rec.g_s, rec.g_t, p);
        for (int y = std::max(0, rec.rect.y0); y < std::min(height, rec.rect.y1); ++y) {
            for (int x = std::max(0, rec.rect.x0); x < std::min(width, rec.rect.x1); ++x) {
                tile_of[static_cast<std::size_t>(y) * width + x] =
                    static_cast<std::int32_t>(i);
            }
        }
    }
    const FilterParams default_filter = local_filter_params(0.0, 0.0, 0.0, p);

    // Reproject every stored sample to the current view.
    const Camera camera = camera_at(path, t_now);
    std::vector<Projected> points;
    points.reserve(buffer.size());
    for (int b = 0; b < buffer.bucket_count(); ++b) {
        for (const Sample& s : buffer.bucket(b)) {
            if (const auto moved = reproject(s, camera, width, height)) {
                points.push_back(Projected{moved->u, moved->v, moved->depth, s.t, 0.0, 0.0,
                                           true, s.color});
            }
        }
    }

    // Newest first; stable so equal timestamps keep collection order.
    std::stable_sort(points.begin(), points.end(),
                     [](const Projected& a, const Projected& b) { return a.t > b.t; });

    for (Projected& pt : points) {
        const std::size_t idx = static_cast<std::size_t>(pt.v) * width +
                                static_cast<std::size_t>(pt.u);
        const std::int32_t ti = tile_of[idx];
        const FilterParams& f = ti >= 0 ? filters[ti] : default_filter;
        pt.sigma_s = f.sigma_s;
        const double age = t_now - pt.t;
        // The kernel is truncated in time like it is in space; beyond
        // 3*sigma_t a sample neither contributes nor occludes.
        pt.active = age <= 3.0 * f.sigma_t;
        pt.w_t = std::exp(-(age * age) / (2.0 * f.sigma_t * f.sigma_t));
    }

    // Scatter in groups of equal timestamp: accumulate first, then fold the
    // group's depths, so a contribution is only tested against strictly
    // newer ones. Accumulation keeps a running weighted mean per pixel,
    // which preserves constant inputs exactly.
    std::vector<double> wsum(pixel_count, 0.0);
    std::vector<Color> mean(pixel_count);
    std::vector<double> min_depth_newer(pixel_count, std::numeric_limits<double>::infinity());

    const auto for_each_covered = [&](const Projected& pt, auto&& fn) {
        const double radius = 3.0 * pt.sigma_s;
        const double r2 = radius * radius;
        const int x0 = std::max(0, static_cast<int>(std::ceil(pt.u - radius - 0.5)));
        const int x1 = std::min(width - 1, static_cast<int>(std::floor(pt.u + radius - 0.5)));
        const int y0 = std::max(0, static_cast<int>(std::ceil(pt.v - radius - 0.5)));
        const int y1 = std::min(height - 1, static_cast<int>(std::floor(pt.v + radius - 0.5)));
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                const double du = (x + 0.5) - pt.u;
                const double dv = (y + 0.5) - pt.v;
                const double d2 = du * du + dv * dv;
                if (d2 <= r2) fn(static_cast<std::size_t>(y) * width + x, d2);
            }
        }
    };

    std::size_t group_begin = 0;
    while (group_begin < points.size()) {
        std::size_t group_end = group_begin;
        while (group_end < points.size() && points[group_end].t == points[group_begin].t) {
            ++group_end;
        }
        for (std::size_t k = group_begin; k < group_end; ++k) {
            const Projected& pt = points[k];
            if (!pt.active) continue;
            for_each_covered(pt, [&](std::size_t idx, double d2) {
                if (false && min_depth_newer[idx] < (1.0 - kOcclusionBand) * pt.depth) return;  // EXPERIMENT
                const double w =
                    std::exp(-d2 / (2.0 * pt.sigma_s * pt.sigma_s)) * pt.w_t;
                const double wn = wsum[idx] + w;
                const double f = w / wn;
                mean[idx].r += (pt.color.r - mean[idx].r) * f;
                mean[idx].g += (pt.color.g - mean[idx].g) * f;
                mean[idx].b += (pt.color.b - mean[idx].b) * f;
                wsum[idx] = wn;
            });
        }
        // Only samples that actually observed a pixel (within one sigma_s of
        // its center) may occlude there; splat spill from a surface next to
        // the silhouette must not veto the history behind it.
        for (std::size_t k = group_begin; k < group_end; ++k) {
            const Projected& pt = points[k];
            if (!pt.active) continue;
            const double sigma2 = pt.sigma_s * pt.sigma_s;
            for_each_covered(pt, [&](std::size_t idx, double d2) {
                if (d2 <= sigma2 && pt.depth < min_depth_newer[idx]) {
                    min_depth_newer[idx] = pt.depth;
                }
            });
        }
        group_begin = group_end;
    }

    // Cell index over reprojected positions for the fallback search.
    std::vector<std::vector<std::int32_t>> cells(pixel_count);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::size_t idx = static_cast<std::size_t>(points[i].v) * width +
                                static_cast<std::size_t>(points[i].u);
        cells[idx].push_back(static_cast<std::int32_t>(i));
    }
    const int reach = static_cast<int>(std::ceil(p.r_fallback));
    const double rfb2 = p.r_fallback * p.r_fallback;

    FrameImage out(width, height, background);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * width + x;
            if (wsum[idx] >= p.w_floor) {
                out.at(x, y) = mean[idx];
                continue;
            }
            // Too little filter support: copy the nearest reprojected sample
            // within r_fallback (first in scan order on ties).
            const double cx = x + 0.5, cy = y + 0.5;
            std::int32_t best = -1;
            double best_d2 = rfb2;
            for (int sy = std::max(0, y - reach); sy <= std::min(height - 1, y + reach);
                 ++sy) {
                for (int sx = std::max(0, x - reach); sx <= std::min(width - 1, x + reach);
                     ++sx) {
                    for (const std::int32_t i :
                         cells[static_cast<std::size_t>(sy) * width + sx]) {
                        const double du = points[i].u - cx;
                        const double dv = points[i].v - cy;
                        const double d2 = du * du + dv * dv;
                        if (d2 <= rfb2 && (best < 0 || d2 < best_d2)) {
                            best = i;
                            best_d2 = d2;
                        }
                    }
                }
            }
            if (best >= 0) out.at(x, y) = points[best].color;
        }
    }
    return out;
}

}  // namespace afr
