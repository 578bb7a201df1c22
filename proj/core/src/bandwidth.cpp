// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#include "afr/bandwidth.hpp"

#include <cmath>
#include <stdexcept>

namespace afr {

std::int64_t pixel_count(const DisplaySpec& spec) {
    if (!(spec.width_in > 0.0 && spec.height_in > 0.0 && spec.dpi > 0.0)) {
        throw std::invalid_argument("pixel_count: dimensions and dpi must be positive");
    }
    const auto across = static_cast<std::int64_t>(std::llround(spec.width_in * spec.dpi));
    const auto down = static_cast<std::int64_t>(std::llround(spec.height_in * spec.dpi));
    return across * down;
}

LinkRate link_rate(double pixels, double refresh_hz, double bits_per_pixel) {
    LinkRate r;
    r.pixels_per_s = pixels * refresh_hz;
    r.bits_per_s = pixels * refresh_hz * bits_per_pixel;
    return r;
}

}  // namespace afr
