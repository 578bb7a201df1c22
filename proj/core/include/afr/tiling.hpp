// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace afr {

/// Integer pixel rectangle [x0, x1) x [y0, y1).
struct Rect {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    int width() const { return x1 - x0; }
    int height() const { return y1 - y0; }
    std::int64_t area() const { return static_cast<std::int64_t>(width()) * height(); }
    bool contains(double u, double v) const {
        return u >= x0 && u < x1 && v >= y0 && v < y1;
    }
    bool operator==(const Rect& o) const = default;
};

/// Exponentially decayed per-tile statistics: sample count, luminance
/// mean/variance, and spatial/temporal luminance gradients. pair_n_s /
/// pair_n_t are the decayed pair counts behind the gradient means.
struct TileStats {
    double n = 0.0;
    double mean_L = 0.0;
    double var_L = 0.0;
    double g_s = 0.0;  // luminance per pixel
    double g_t = 0.0;  // luminance per second
    double last_t = 0.0;
    double pair_n_s = 0.0;
    double pair_n_t = 0.0;
};

struct TileRecord {
    Rect rect;
    double g_s = 0.0;
    double g_t = 0.0;
    double density = 0.0;  // decayed samples per px^2
};

/// Snapshot of the current cut handed to the reconstructor at each refresh.
struct RefreshMetadata {
    std::vector<TileRecord> tiles;
};

/// K-D tree over image space whose current leaves (the cut) exactly
/// partition [0, W) x [0, H). Starts as a single root leaf. split() and
/// merge() preserve the partition invariant by construction; node ids stay
/// stable until the node itself is merged away.
class Tiling {
  public:
    Tiling(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    int leaf_count() const { return static_cast<int>(cut_.size()); }

    /// Node ids of the current leaves, in deterministic cut order: a split
    /// replaces the leaf by its left child and inserts the right child just
    /// after; a merge replaces the first-positioned child by the parent.
    const std::vector<int>& cut() const { return cut_; }

    const Rect& rect(int node) const { return nodes_[node].rect; }
    TileStats& stats(int node) { return nodes_[node].stats; }
    const TileStats& stats(int node) const { return nodes_[node].stats; }

    bool is_leaf(int node) const { return nodes_[node].left < 0; }
    int parent(int node) const { return nodes_[node].parent; }
    int left_child(int node) const { return nodes_[node].left; }
    int right_child(int node) const { return nodes_[node].right; }

    /// Leaf node id containing the image location (u, v) in [0,W)x[0,H).
    int find_leaf(double u, double v) const;

    /// A leaf can split when its longer side spans at least 2 pixels;
    /// 1x1 leaves never split.
    bool splittable(int node) const {
        const Rect& r = nodes_[node].rect;
        return is_leaf(node) && (r.width() >= 2 || r.height() >= 2);
    }

    /// Splits a leaf at the pixel midpoint of its longer axis (ties split x).
    /// Children share the parent's means and gradients with halved counts.
    void split(int node);

    /// Merges a parent whose two children are both leaves; stats are summed
    /// (count-weighted means, combined variance). Returns the parent id.
    int merge(int parent_node);

    /// Parents whose both children are currently leaves, in deterministic
    /// order (first appearance while scanning the cut).
    std::vector<int> mergeable_parents() const;

  private:
    struct Node {
        Rect rect;
        int parent = -1;
        int left = -1, right = -1;
        TileStats stats;
        int cut_pos = -1;  // position in cut_ when leaf
    };

    int alloc_node();

    int width_, height_;
    std::vector<Node> nodes_;
    std::vector<int> cut_;
    std::vector<int> free_;
    int root_;
};

}  // namespace afr
