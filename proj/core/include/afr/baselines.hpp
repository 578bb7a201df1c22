// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "afr/frame_image.hpp"
#include "afr/rng.hpp"
#include "afr/scene.hpp"

namespace afr {

/// Double-buffered framed renderer at the same virtual sample budget as the
/// other modes: each sample fills the next row-major pixel of the back
/// buffer with the camera frozen at the frame's start time; completed frames
/// swap to the front. display() never shows a partial frame.
class FramedRenderer {
  public:
    FramedRenderer(const Scene& scene, const CameraPath& path, int width, int height,
                   std::int64_t budget_samples_per_s);

    void step(std::int64_t i);
    const FrameImage& display() const { return front_; }

    double frame_time() const {
        return static_cast<double>(static_cast<std::int64_t>(width_) * height_) /
               static_cast<double>(budget_);
    }
    /// Camera time of the frame currently on display; negative before the
    /// first frame completes (the initial background image).
    double front_camera_time() const { return front_camera_time_; }
    std::int64_t trace_calls() const { return trace_calls_; }

  private:
    const Scene* scene_;
    const CameraPath* path_;
    int width_, height_;
    std::int64_t budget_;
    FrameImage front_, back_;
    double frame_start_t_ = 0.0;
    double front_camera_time_ = -1.0;
    std::int64_t pixel_ = 0;
    std::int64_t trace_calls_ = 0;
};

/// The original frameless baseline: continual single-buffered update of
/// pixels picked uniformly at random, each traced with the most current
/// camera. display() shows the in-place buffer, mid-interval updates
/// included.
class FramelessRenderer {
  public:
    FramelessRenderer(const Scene& scene, const CameraPath& path, int width, int height,
                      std::int64_t budget_samples_per_s, std::uint64_t seed);

    void step(std::int64_t i);
    const FrameImage& display() const { return image_; }
    std::int64_t trace_calls() const { return trace_calls_; }

  private:
    const Scene* scene_;
    const CameraPath* path_;
    int width_, height_;
    std::int64_t budget_;
    Rng rng_;
    FrameImage image_;
    std::int64_t trace_calls_ = 0;
};

}  // namespace afr
