// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#include "afr/tiling.hpp"

#include <algorithm>
#include <stdexcept>

namespace afr {

Tiling::Tiling(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("Tiling: dimensions must be positive");
    }
    Node root;
    root.rect = Rect{0, 0, width, height};
    root.cut_pos = 0;
    nodes_.push_back(root);
    root_ = 0;
    cut_.push_back(root_);
}

int Tiling::find_leaf(double u, double v) const {
    int node = root_;
    while (!is_leaf(node)) {
        const Node& n = nodes_[node];
        const Rect& lr = nodes_[n.left].rect;
        // The left child owns [x0, split) (or [y0, split)).
        const bool go_left = (lr.x1 < nodes_[n.right].rect.x1) ? (u < lr.x1) : (v < lr.y1);
        node = go_left ? n.left : n.right;
    }
    return node;
}

int Tiling::alloc_node() {
    if (!free_.empty()) {
        const int id = free_.back();
        free_.pop_back();
        nodes_[id] = Node{};
        return id;
    }
    nodes_.push_back(Node{});
    return static_cast<int>(nodes_.size()) - 1;
}

void Tiling::split(int node) {
    if (!splittable(node)) throw std::invalid_argument("Tiling::split: leaf not splittable");

    const Rect r = nodes_[node].rect;
    Rect left_rect = r, right_rect = r;
    if (r.width() >= r.height()) {
        const int mid = r.x0 + r.width() / 2;
        left_rect.x1 = mid;
        right_rect.x0 = mid;
    } else {
        const int mid = r.y0 + r.height() / 2;
        left_rect.y1 = mid;
        right_rect.y0 = mid;
    }

    const int li = alloc_node();
    const int ri = alloc_node();
    TileStats child = nodes_[node].stats;
    child.n *= 0.5;
    child.pair_n_s *= 0.5;
    child.pair_n_t *= 0.5;

    nodes_[li].rect = left_rect;
    nodes_[ri].rect = right_rect;
    nodes_[li].parent = nodes_[ri].parent = node;
    nodes_[li].stats = nodes_[ri].stats = child;
    nodes_[node].left = li;
    nodes_[node].right = ri;

    const int pos = nodes_[node].cut_pos;
    nodes_[node].cut_pos = -1;
    cut_[pos] = li;
    nodes_[li].cut_pos = pos;
    cut_.insert(cut_.begin() + pos + 1, ri);
    for (std::size_t i = pos + 1; i < cut_.size(); ++i) {
        nodes_[cut_[i]].cut_pos = static_cast<int>(i);
    }
}

int Tiling::merge(int parent_node) {
    Node& p = nodes_[parent_node];
    if (p.left < 0 || !is_leaf(p.left) || !is_leaf(p.right)) {
        throw std::invalid_argument("Tiling::merge: children are not both leaves");
    }
    const TileStats& a = nodes_[p.left].stats;
    const TileStats& b = nodes_[p.right].stats;

    TileStats merged;
    merged.n = a.n + b.n;
    if (merged.n > 0.0) {
        merged.mean_L = (a.n * a.mean_L + b.n * b.mean_L) / merged.n;
        const double da = a.mean_L - merged.mean_L;
        const double db = b.mean_L - merged.mean_L;
        merged.var_L = (a.n * (a.var_L + da * da) + b.n * (b.var_L + db * db)) / merged.n;
    }
    merged.pair_n_s = a.pair_n_s + b.pair_n_s;
    if (merged.pair_n_s > 0.0) {
        merged.g_s = (a.pair_n_s * a.g_s + b.pair_n_s * b.g_s) / merged.pair_n_s;
    }
    merged.pair_n_t = a.pair_n_t + b.pair_n_t;
    if (merged.pair_n_t > 0.0) {
        merged.g_t = (a.pair_n_t * a.g_t + b.pair_n_t * b.g_t) / merged.pair_n_t;
    }
    merged.last_t = std::max(a.last_t, b.last_t);

    const int pos_l = nodes_[p.left].cut_pos;
    const int pos_r = nodes_[p.right].cut_pos;
    const int keep = std::min(pos_l, pos_r);
    const int drop = std::max(pos_l, pos_r);

    cut_.erase(cut_.begin() + drop);
    cut_[keep] = parent_node;
    p.stats = merged;
    p.cut_pos = keep;
    free_.push_back(p.left);
    free_.push_back(p.right);
    nodes_[p.left] = Node{};
    nodes_[p.right] = Node{};
    p.left = p.right = -1;
    for (std::size_t i = keep; i < cut_.size(); ++i) {
        nodes_[cut_[i]].cut_pos = static_cast<int>(i);
    }
    return parent_node;
}

std::vector<int> Tiling::mergeable_parents() const {
    std::vector<int> parents;
    std::vector<bool> seen(nodes_.size(), false);
    for (const int leaf : cut_) {
        const int p = nodes_[leaf].parent;
        if (p < 0 || seen[p]) continue;
        seen[p] = true;
        if (is_leaf(nodes_[p].left) && is_leaf(nodes_[p].right)) parents.push_back(p);
    }
    return parents;
}

}  // namespace afr
