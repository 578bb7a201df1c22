// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace afr {

/// Physical display description for the pixel-count / link-rate calculator.
struct DisplaySpec {
    double width_in = 0.0;
    double height_in = 0.0;
    double dpi = 0.0;
    double refresh_hz = 0.0;
    double bits_per_pixel = 24.0;
};

/// round(width*dpi) * round(height*dpi). Throws std::invalid_argument on
/// nonpositive dimensions or dpi.
std::int64_t pixel_count(const DisplaySpec& spec);

struct LinkRate {
    double pixels_per_s = 0.0;
    double bits_per_s = 0.0;
};

/// pixels*refresh and pixels*refresh*bpp, decimal SI throughout.
LinkRate link_rate(double pixels, double refresh_hz, double bits_per_pixel);

}  // namespace afr
