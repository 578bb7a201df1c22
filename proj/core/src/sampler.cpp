// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#include "afr/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace afr {

double importance(const Rect& rect, const TileStats& stats, const SamplerParams& p) {
    return static_cast<double>(rect.area()) *
           (stats.var_L + p.kappa * stats.g_t * p.tau_stats + p.eps_importance);
}

void update_stats(TileStats& stats, const Sample& sample, std::span<const Sample> neighbors,
                  double t_now, const SamplerParams& p) {
    const double dt = t_now - stats.last_t;
    if (dt > 0.0) {
        const double decay = std::exp(-dt / p.tau_stats);
        stats.n *= decay;
        stats.pair_n_s *= decay;
        stats.pair_n_t *= decay;
    }
    stats.last_t = std::max(stats.last_t, t_now);

    // Weighted Welford update with unit sample weight.
    const double L = luminance(sample.color);
    const double n1 = stats.n + 1.0;
    const double mean1 = stats.mean_L + (L - stats.mean_L) / n1;
    const double shift = mean1 - stats.mean_L;
    stats.var_L = (stats.n * (stats.var_L + shift * shift) + (L - mean1) * (L - mean1)) / n1;
    stats.mean_L = mean1;
    stats.n = n1;

    // Temporal pairs must compare the same geometry: pick the spatially
    // nearest neighbor within r_match (newest on ties). Pairing by recency
    // instead would read static edges as temporal change whenever two
    // close-in-time samples straddle the edge.
    const Sample* t_pair = nullptr;
    double t_pair_dist = 0.0;
    for (const Sample& nb : neighbors) {
        const double du = sample.u - nb.u;
        const double dv = sample.v - nb.v;
        const double dist = std::sqrt(du * du + dv * dv);
        const double x = std::abs(L - luminance(nb.color)) / std::max(dist, 0.5);
        stats.pair_n_s += 1.0;
        stats.g_s += (x - stats.g_s) / stats.pair_n_s;
        if (dist <= p.r_match &&
            (t_pair == nullptr || dist < t_pair_dist ||
             (dist == t_pair_dist && nb.t >= t_pair->t))) {
            t_pair = &nb;
            t_pair_dist = dist;
        }
    }
    if (t_pair != nullptr) {
        const double x = std::abs(L - luminance(t_pair->color)) /
                         std::max(std::abs(sample.t - t_pair->t), 1e-3);
        stats.pair_n_t += 1.0;
        stats.g_t += (x - stats.g_t) / stats.pair_n_t;
    }
}

int target_tile_count(double mean_g_s, double mean_g_t, const SamplerParams& p) {
    const double f = mean_g_s / (mean_g_s + p.lambda * mean_g_t + p.eps_control);
    return static_cast<int>(std::llround(p.n_min + (p.n_max - p.n_min) * f));
}

namespace {

// Highest-importance splittable leaf, first-in-cut on ties. -1 when none.
int argmax_splittable(const Tiling& t, const SamplerParams& p) {
    int best = -1;
    double best_imp = -1.0;
    for (const int leaf : t.cut()) {
        if (!t.splittable(leaf)) continue;
        const double imp = importance(t.rect(leaf), t.stats(leaf), p);
        if (imp > best_imp) {
            best_imp = imp;
            best = leaf;
        }
    }
    return best;
}

// Highest-importance leaf overall (need not be splittable).
int argmax_leaf(const Tiling& t, const SamplerParams& p) {
    int best = -1;
    double best_imp = -1.0;
    for (const int leaf : t.cut()) {
        const double imp = importance(t.rect(leaf), t.stats(leaf), p);
        if (imp > best_imp) {
            best_imp = imp;
            best = leaf;
        }
    }
    return best;
}

double pair_importance(const Tiling& t, int parent, const SamplerParams& p) {
    const int l = t.left_child(parent);
    const int r = t.right_child(parent);
    return importance(t.rect(l), t.stats(l), p) + importance(t.rect(r), t.stats(r), p);
}

// Cheapest sibling pair, skipping pairs that contain excluded_leaf. Falls
// back to the excluded pair only when it is the sole candidate.
int argmin_pair(const Tiling& t, const SamplerParams& p, int excluded_leaf) {
    int best = -1, fallback = -1;
    double best_imp = 0.0, fallback_imp = 0.0;
    for (const int parent : t.mergeable_parents()) {
        const double imp = pair_importance(t, parent, p);
        if (t.left_child(parent) == excluded_leaf || t.right_child(parent) == excluded_leaf) {
            if (fallback < 0 || imp < fallback_imp) {
                fallback = parent;
                fallback_imp = imp;
            }
            continue;
        }
        if (best < 0 || imp < best_imp) {
            best = parent;
            best_imp = imp;
        }
    }
    return best >= 0 ? best : fallback;
}

}  // namespace

void rebalance(Tiling& tiling, int n_target, int max_ops, const SamplerParams& p) {
    for (int op = 0; op < max_ops; ++op) {
        const int count = tiling.leaf_count();
        if (count < n_target) {
            const int leaf = argmax_splittable(tiling, p);
            if (leaf < 0) return;
            tiling.split(leaf);
        } else if (count > n_target) {
            if (count < 2) return;
            const int max_leaf = argmax_leaf(tiling, p);
            const int parent = argmin_pair(tiling, p, max_leaf);
            if (parent < 0) return;
            tiling.merge(parent);
        } else {
            const int max_leaf = argmax_leaf(tiling, p);
            if (max_leaf < 0 || !tiling.splittable(max_leaf)) return;
            const int parent = argmin_pair(tiling, p, max_leaf);
            if (parent < 0) return;
            if (importance(tiling.rect(max_leaf), tiling.stats(max_leaf), p) <=
                p.rho * pair_importance(tiling, parent, p)) {
                return;  // in equilibrium
            }
            tiling.merge(parent);
            tiling.split(max_leaf);
        }
    }
}

std::pair<double, double> next_location(const Tiling& tiling, Rng& rng) {
    const auto& cut = tiling.cut();
    const std::size_t pick = rng.uniform_index(cut.size());
    const Rect& r = tiling.rect(cut[pick]);
    const double fu = rng.u01();
    const double fv = rng.u01();
    return {r.x0 + fu * r.width(), r.y0 + fv * r.height()};
}

AdaptiveSampler::AdaptiveSampler(const Scene& scene, const CameraPath& path, int width,
                                 int height, std::int64_t budget_samples_per_s,
                                 std::uint64_t seed, const SamplerParams& params)
    : scene_(&scene),
      path_(&path),
      width_(width),
      height_(height),
      budget_(budget_samples_per_s),
      params_(params),
      rng_(seed),
      buffer_(width, height, params.bucket_capacity),
      tiling_(width, height) {
    if (budget_ <= 0) throw std::invalid_argument("AdaptiveSampler: budget must be positive");
    // Bring the cut up to its lower bound before any samples arrive.
    rebalance(tiling_, params_.n_min, params_.n_min, params_);
}

void AdaptiveSampler::reproject_one(const Camera& camera, double t_now) {
    const int buckets = buffer_.bucket_count();
    for (int probes = 0; probes < buckets; ++probes) {
        const int b = bucket_cursor_;
        bucket_cursor_ = (bucket_cursor_ + 1 == buckets) ? 0 : bucket_cursor_ + 1;
        if (buffer_.bucket(b).empty()) continue;
        const std::optional<Sample> s = buffer_.take_front(b);
        // Samples that leave the view or fall behind the camera are dropped.
        const auto moved = reproject(*s, camera, width_, height_);
        if (!moved) return;
        // Revalidate visibility: the scene's nearest surface along this line
        // of sight must still sit at the stored depth. This drops samples
        // now hidden behind or beyond other geometry (the depth test at
        // filter time cannot catch self-occluded silhouette samples) and
        // ghosts left behind by objects that moved away.
        const Vec3 dir = (moved->world_point - camera.eye) / moved->depth;
        const double hit = nearest_hit_distance(*scene_, Ray{camera.eye, dir}, t_now);
        if (std::abs(hit - moved->depth) > 0.01 * moved->depth) return;
        buffer_.insert(*moved);
        return;
    }
}

Sample AdaptiveSampler::step(std::int64_t i) {
    if (i != next_index_) {
        throw std::invalid_argument("AdaptiveSampler::step: sample indices must be sequential");
    }
    ++next_index_;

    const double t = static_cast<double>(i) / static_cast<double>(budget_);
    const auto [u, v] = next_location(tiling_, rng_);
    buffer_.gather_into(u, v, params_.r_grad, &neighbor_scratch_);
    const Sample sample = generate_sample(*scene_, *path_, u, v, t, width_, height_);
    buffer_.insert(sample);
    update_stats(tiling_.stats(tiling_.find_leaf(u, v)), sample, neighbor_scratch_, t,
                 params_);

    if (params_.reproject_per_sample > 0 && buffer_.size() > 0) {
        // Scale the round-robin so the whole buffer revisits within
        // reproject_cycle_s of virtual time; stale stored positions would
        // otherwise corrupt neighborhood queries during fast motion.
        const double per_step = static_cast<double>(buffer_.size()) /
                                (static_cast<double>(budget_) * params_.reproject_cycle_s);
        const int count = std::max(params_.reproject_per_sample,
                                   static_cast<int>(std::ceil(per_step)));
        const Camera camera = camera_at(*path_, t);
        for (int r = 0; r < count; ++r) reproject_one(camera, t);
    }

    if (++since_rebalance_ >= params_.rebalance_interval) {
        since_rebalance_ = 0;
        const auto [gs, gt] = cut_mean_gradients();
        int n_target = target_tile_count(gs, gt, params_);
        const int count = tiling_.leaf_count();
        if (std::abs(n_target - count) <= params_.hysteresis * count) {
            n_target = count;  // hold the count, still allow equilibrium swaps
        }
        rebalance(tiling_, n_target, params_.rebalance_max_ops, params_);
    }
    return sample;
}

std::pair<double, double> AdaptiveSampler::cut_mean_gradients() const {
    double gs = 0.0, gt = 0.0;
    for (const int leaf : tiling_.cut()) {
        gs += tiling_.stats(leaf).g_s;
        gt += tiling_.stats(leaf).g_t;
    }
    const double n = static_cast<double>(tiling_.leaf_count());
    return {gs / n, gt / n};
}

RefreshMetadata AdaptiveSampler::refresh_metadata() const {
    RefreshMetadata meta;
    meta.tiles.reserve(tiling_.cut().size());
    for (const int leaf : tiling_.cut()) {
        const TileStats& st = tiling_.stats(leaf);
        const Rect& r = tiling_.rect(leaf);
        meta.tiles.push_back(
            TileRecord{r, st.g_s, st.g_t, st.n / static_cast<double>(r.area())});
    }
    return meta;
}

}  // namespace afr
