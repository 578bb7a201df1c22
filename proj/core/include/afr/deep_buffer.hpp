// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "afr/sample.hpp"
#include "afr/scene.hpp"

namespace afr {

/// Bucketed store of recent timestamped samples. One bucket per pixel, each
/// holding at most `bucket_capacity` samples in insertion order; inserting
/// into a full bucket evicts the sample with the smallest timestamp
/// (earliest-inserted on ties).
///
/// Single-writer: reads may run concurrently with each other but not with
/// insert/take_front.
class DeepBuffer {
  public:
    DeepBuffer(int width, int height, int bucket_capacity = 8);

    int width() const { return width_; }
    int height() const { return height_; }
    int bucket_capacity() const { return capacity_; }
    std::size_t size() const { return count_; }

    /// Throws std::invalid_argument when the sample lies outside the image.
    void insert(const Sample& sample);

    /// All stored samples within Euclidean image distance `radius` of (u, v),
    /// in deterministic order: bucket row-major, then insertion order.
    std::vector<Sample> gather(double u, double v, double radius) const;
    void gather_into(double u, double v, double radius, std::vector<Sample>* out) const;

    int bucket_count() const { return width_ * height_; }
    const std::vector<Sample>& bucket(int index) const { return buckets_[index]; }

    /// Removes and returns the earliest-inserted sample of a bucket, or
    /// nothing when the bucket is empty. Used for round-robin reprojection.
    std::optional<Sample> take_front(int bucket_index);

  private:
    int width_, height_, capacity_;
    std::size_t count_ = 0;
    std::vector<std::vector<Sample>> buckets_;
};

/// Reprojects a stored sample through the camera at t_now: (u, v) and depth
/// are recomputed from the stored world point; color, world point, and the
/// original timestamp are preserved. Returns nothing when the point falls
/// behind the camera or outside the image.
std::optional<Sample> reproject(const Sample& sample, const Camera& camera, int width,
                                int height);
std::optional<Sample> reproject(const Sample& sample, const CameraPath& path, double t_now,
                                int width, int height);

}  // namespace afr
