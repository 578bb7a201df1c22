// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "afr/math.hpp"

namespace afr {

/// Row-major grid of linear-RGB colors.
struct FrameImage {
    int width = 0, height = 0;
    std::vector<Color> pixels;

    FrameImage() = default;
    FrameImage(int w, int h, const Color& fill = Color{})
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    Color& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    const Color& at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }

    bool operator==(const FrameImage& o) const = default;
};

}  // namespace afr
