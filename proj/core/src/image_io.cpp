// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#include "afr/image_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace afr {

std::uint8_t srgb_encode(double linear) {
    const double c = clamp01(linear);
    const double encoded =
        c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
    return static_cast<std::uint8_t>(std::round(encoded * 255.0));
}

std::string encode_ppm(const FrameImage& image) {
    std::string out = "P6\n" + std::to_string(image.width) + " " +
                      std::to_string(image.height) + "\n255\n";
    out.reserve(out.size() + image.pixels.size() * 3);
    for (const Color& c : image.pixels) {
        out.push_back(static_cast<char>(srgb_encode(c.r)));
        out.push_back(static_cast<char>(srgb_encode(c.g)));
        out.push_back(static_cast<char>(srgb_encode(c.b)));
    }
    return out;
}

void write_image(const FrameImage& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_image: cannot open " + path);
    const std::string data = encode_ppm(image);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("write_image: write failed for " + path);
}

}  // namespace afr
