// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "afr/deep_buffer.hpp"
#include "afr/rng.hpp"
#include "afr/sample.hpp"
#include "afr/scene.hpp"
#include "afr/tiling.hpp"

namespace afr {

/// Controller constants. All overridable from the [sampler] config section.
struct SamplerParams {
    double tau_stats = 0.5;        // stats decay time constant, seconds
    double r_grad = 3.0;           // neighborhood radius for gradient pairs, px
    double r_match = 1.0;          // max pair distance for temporal gradients, px
    int reproject_per_sample = 4;     // minimum reprojections per new sample
    double reproject_cycle_s = 0.01;  // max virtual-time lag of stored positions
    int rebalance_interval = 64;   // samples between controller updates
    int rebalance_max_ops = 8;     // split/merge budget per update
    int n_min = 16;                // cut size bounds
    int n_max = 1024;
    double kappa = 1.0;       // temporal term weight in importance
    double eps_importance = 1e-4;  // keeps unsampled tiles discoverable
    double lambda = 0.05;     // seconds of temporal change worth 1 px of spatial
    double eps_control = 1e-9;
    double hysteresis = 0.10;  // relative dead band around the current cut size
    double rho = 4.0;          // max/min imbalance that triggers an equilibrium swap
    int bucket_capacity = 8;   // deep-buffer samples per pixel bucket
};

/// Tile priority for receiving samples: area * (var_L + kappa*g_t*tau + eps).
/// Variance keys on edges, the temporal term on motion; eps keeps every
/// region eventually sampled.
double importance(const Rect& rect, const TileStats& stats, const SamplerParams& p);

/// Folds one new sample and its gathered neighborhood into a tile's decayed
/// statistics. Spatial gradients pair the sample with every neighbor;
/// the temporal gradient pairs it with the most recent neighbor within
/// r_match. Neighbors must be gathered before the sample is inserted.
void update_stats(TileStats& stats, const Sample& sample, std::span<const Sample> neighbors,
                  double t_now, const SamplerParams& p);

/// Proportional control law mapping gradient dominance to a cut size:
/// round(n_min + (n_max-n_min) * G_s / (G_s + lambda*G_t + eps)).
/// Temporal dominance shrinks the cut, spatial dominance grows it.
int target_tile_count(double mean_g_s, double mean_g_t, const SamplerParams& p);

/// Moves the cut toward n_target with at most max_ops split/merge steps.
/// Below target: split the most important splittable leaf. Above target:
/// merge the sibling pair with the lowest combined importance, never the
/// pair holding the most important leaf (unless it is the only pair). At
/// target: one merge+split swap when max leaf importance exceeds rho times
/// the cheapest pair.
void rebalance(Tiling& tiling, int n_target, int max_ops, const SamplerParams& p);

/// Uniform leaf pick, then uniform location within the leaf. Consumes
/// exactly three rng draws per call.
std::pair<double, double> next_location(const Tiling& tiling, Rng& rng);

/// The adaptive frameless controller: owns the tiling, the deep buffer, and
/// the per-sample loop (generate, insert, stats, reprojection, periodic
/// rebalance). Samples are indexed on a virtual clock: sample i lands at
/// t = i / budget. Strictly single-threaded; step() calls must be ordered.
class AdaptiveSampler {
  public:
    AdaptiveSampler(const Scene& scene, const CameraPath& path, int width, int height,
                    std::int64_t budget_samples_per_s, std::uint64_t seed,
                    const SamplerParams& params);

    /// Runs the full per-sample pipeline for sample index i and returns the
    /// generated sample. Indices must arrive in order starting at 0.
    Sample step(std::int64_t i);

    /// Immutable snapshot of the cut (rects, gradients, densities) for the
    /// reconstructor.
    RefreshMetadata refresh_metadata() const;

    std::pair<double, double> cut_mean_gradients() const;

    const DeepBuffer& buffer() const { return buffer_; }
    const Tiling& tiling() const { return tiling_; }
    const SamplerParams& params() const { return params_; }

  private:
    void reproject_one(const Camera& camera, double t_now);

    const Scene* scene_;
    const CameraPath* path_;
    int width_, height_;
    std::int64_t budget_;
    SamplerParams params_;
    Rng rng_;
    DeepBuffer buffer_;
    Tiling tiling_;
    std::int64_t next_index_ = 0;
    int since_rebalance_ = 0;
    int bucket_cursor_ = 0;
    std::vector<Sample> neighbor_scratch_;
};

}  // namespace afr
