// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "afr/frame_image.hpp"

namespace afr {

/// Linear [0,1] -> sRGB byte: 12.92*c below 0.0031308, else
/// 1.055*c^(1/2.4) - 0.055, scaled by 255 and rounded half away from zero.
/// Input is clamped to [0,1] first.
std::uint8_t srgb_encode(double linear);

/// Binary PPM (P6, maxval 255) with sRGB-encoded pixels. Byte-stable for a
/// given image, so outputs can be golden-file compared.
std::string encode_ppm(const FrameImage& image);

/// Writes encode_ppm() to disk. Throws std::runtime_error on I/O failure.
void write_image(const FrameImage& image, const std::string& path);

}  // namespace afr
