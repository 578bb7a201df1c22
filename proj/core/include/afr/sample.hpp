// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "afr/math.hpp"

namespace afr {

/// A timestamped point measurement of the scene: the unit of all rendering
/// work. (u, v) are continuous image coordinates in pixels, depth is the
/// Euclidean camera-space distance to the hit, world_point the 3D hit
/// location that reprojection re-projects through later cameras.
struct Sample {
    double u = 0.0;
    double v = 0.0;
    Color color;
    double depth = 0.0;
    Vec3 world_point;
    double t = 0.0;
    bool is_background = false;
};

}  // namespace afr
