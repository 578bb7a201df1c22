// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#include "afr/deep_buffer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace afr {

DeepBuffer::DeepBuffer(int width, int height, int bucket_capacity)
    : width_(width), height_(height), capacity_(bucket_capacity) {
    if (width <= 0 || height <= 0 || bucket_capacity <= 0) {
        throw std::invalid_argument("DeepBuffer: dimensions and capacity must be positive");
    }
    buckets_.resize(static_cast<std::size_t>(width) * height);
}

void DeepBuffer::insert(const Sample& sample) {
    if (!(sample.u >= 0.0 && sample.u < width_ && sample.v >= 0.0 && sample.v < height_)) {
        throw std::invalid_argument("DeepBuffer::insert: sample out of image bounds");
    }
    auto& bucket = buckets_[static_cast<std::size_t>(sample.v) * width_ +
                            static_cast<std::size_t>(sample.u)];
    if (bucket.empty()) bucket.reserve(capacity_ + 1);
    bucket.push_back(sample);
    ++count_;
    if (bucket.size() > static_cast<std::size_t>(capacity_)) {
        // Evict the smallest timestamp; ties fall to the earliest-inserted.
        std::size_t victim = 0;
        for (std::size_t i = 1; i < bucket.size(); ++i) {
            if (bucket[i].t < bucket[victim].t) victim = i;
        }
        bucket.erase(bucket.begin() + static_cast<std::ptrdiff_t>(victim));
        --count_;
    }
}

void DeepBuffer::gather_into(double u, double v, double radius,
                             std::vector<Sample>* out) const {
    out->clear();
    if (radius < 0.0) return;
    const int x0 = std::max(0, static_cast<int>(std::floor(u - radius)));
    const int x1 = std::min(width_ - 1, static_cast<int>(std::floor(u + radius)));
    const int y0 = std::max(0, static_cast<int>(std::floor(v - radius)));
    const int y1 = std::min(height_ - 1, static_cast<int>(std::floor(v + radius)));
    const double r2 = radius * radius;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            for (const Sample& s : buckets_[static_cast<std::size_t>(y) * width_ + x]) {
                const double du = s.u - u;
                const double dv = s.v - v;
                if (du * du + dv * dv <= r2) out->push_back(s);
            }
        }
    }
}

std::vector<Sample> DeepBuffer::gather(double u, double v, double radius) const {
    std::vector<Sample> out;
    gather_into(u, v, radius, &out);
    return out;
}

std::optional<Sample> DeepBuffer::take_front(int bucket_index) {
    auto& bucket = buckets_[bucket_index];
    if (bucket.empty()) return std::nullopt;
    Sample s = bucket.front();
    bucket.erase(bucket.begin());
    --count_;
    return s;
}

std::optional<Sample> reproject(const Sample& sample, const Camera& camera, int width,
                                int height) {
    double u, v, depth;
    if (!camera.project(sample.world_point, width, height, &u, &v, &depth)) {
        return std::nullopt;
    }
    if (!(u >= 0.0 && u < width && v >= 0.0 && v < height)) return std::nullopt;
    Sample moved = sample;
    moved.u = u;
    moved.v = v;
    moved.depth = depth;
    return moved;
}

std::optional<Sample> reproject(const Sample& sample, const CameraPath& path, double t_now,
                                int width, int height) {
    return reproject(sample, camera_at(path, t_now), width, height);
}

}  // namespace afr
