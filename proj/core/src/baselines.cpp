// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#include "afr/baselines.hpp"

#include <stdexcept>
#include <utility>

namespace afr {

FramedRenderer::FramedRenderer(const Scene& scene, const CameraPath& path, int width,
                               int height, std::int64_t budget_samples_per_s)
    : scene_(&scene),
      path_(&path),
      width_(width),
      height_(height),
      budget_(budget_samples_per_s),
      front_(width, height, scene.background),
      back_(width, height, scene.background) {
    if (budget_ <= 0) throw std::invalid_argument("FramedRenderer: budget must be positive");
}

void FramedRenderer::step(std::int64_t i) {
    const int x = static_cast<int>(pixel_ % width_);
    const int y = static_cast<int>(pixel_ / width_);
    const Sample s =
        generate_sample(*scene_, *path_, x + 0.5, y + 0.5, frame_start_t_, width_, height_);
    ++trace_calls_;
    back_.at(x, y) = s.color;
    if (++pixel_ == static_cast<std::int64_t>(width_) * height_) {
        std::swap(front_, back_);
        front_camera_time_ = frame_start_t_;
        frame_start_t_ = static_cast<double>(i + 1) / static_cast<double>(budget_);
        pixel_ = 0;
    }
}

FramelessRenderer::FramelessRenderer(const Scene& scene, const CameraPath& path, int width,
                                     int height, std::int64_t budget_samples_per_s,
                                     std::uint64_t seed)
    : scene_(&scene),
      path_(&path),
      width_(width),
      height_(height),
      budget_(budget_samples_per_s),
      rng_(seed),
      image_(width, height, scene.background) {
    if (budget_ <= 0) {
        throw std::invalid_argument("FramelessRenderer: budget must be positive");
    }
}

void FramelessRenderer::step(std::int64_t i) {
    const double t = static_cast<double>(i) / static_cast<double>(budget_);
    const std::size_t pick =
        rng_.uniform_index(static_cast<std::size_t>(width_) * height_);
    const int x = static_cast<int>(pick % static_cast<std::size_t>(width_));
    const int y = static_cast<int>(pick / static_cast<std::size_t>(width_));
    const Sample s = generate_sample(*scene_, *path_, x + 0.5, y + 0.5, t, width_, height_);
    ++trace_calls_;
    image_.at(x, y) = s.color;
}

}  // namespace afr
