// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "afr/deep_buffer.hpp"
#include "afr/frame_image.hpp"
#include "afr/tiling.hpp"

namespace afr {

/// Filter-bank constants. All overridable from the [reconstructor] section.
struct ReconstructorParams {
    double c_s = 1.0;      // px; sigma_s = c_s / sqrt(density)
    double c_t = 0.05;     // s; sigma_t = c_t * (g_s + eps) / (g_t + eps)
    double sigma_s_min = 0.5;
    double sigma_s_max = 4.0;
    double sigma_t_min = 0.01;
    double sigma_t_max = 1.0;
    double d_floor = 1e-3;   // density floor under the square root
    double eps_g = 1e-3;     // gradient regularizer
    double w_floor = 1e-8;   // below this total weight a pixel falls back
    double r_fallback = 8.0; // px; nearest-sample fallback search radius
};

/// Space-time Gaussian widths for one tile: sized by local sampling density,
/// shaped by local color gradients. sigma_t narrows where temporal gradients
/// dominate (dynamic content) and widens where spatial gradients dominate
/// (static content).
struct FilterParams {
    double sigma_s = 1.0;  // px
    double sigma_t = 0.05; // s
};

FilterParams local_filter_params(double density, double g_s, double g_t,
                                 const ReconstructorParams& p);

/// One sample's weighted contribution at a pixel. `occluder` marks
/// contributions whose sample actually observed this line of sight (its
/// reprojected position lies within one sigma_s of the pixel center); only
/// those may reject other contributions. Splat spill from a neighboring
/// surface must not erase a pixel's history.
struct Contribution {
    double depth = 0.0;
    double t = 0.0;
    double weight = 0.0;
    Color color;
    bool occluder = true;
};

/// Depth test across time at a single pixel: a contribution is removed when
/// any strictly newer occluder has depth smaller by more than 1% relative.
/// Order is preserved. This is the reference semantic the scatter path must
/// match.
std::vector<Contribution> occlusion_reject(const std::vector<Contribution>& contributions);

/// Converts the deep buffer's temporally scattered samples into a coherent
/// image at t_now. Every stored sample is reprojected through the current
/// camera; survivors scatter truncated space-time Gaussian weights
/// (3*sigma_s spatial support) into nearby pixels using the filter params of
/// the tile containing the reprojected position. Per-pixel depth rejection
/// discards occluded history; pixels with too little total weight copy the
/// nearest reprojected sample within r_fallback, else the background.
/// Pure function of its inputs: identical buffer, metadata, and time give a
/// bit-identical image.
FrameImage reconstruct(const DeepBuffer& buffer, const RefreshMetadata& meta,
                       const CameraPath& path, double t_now, const ReconstructorParams& p,
                       const Color& background);

}  // namespace afr
