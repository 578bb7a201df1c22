// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "afr/math.hpp"
#include "afr/sample.hpp"

namespace afr {

/// Raised for malformed scene/camera/config files and invalid setups.
/// Messages carry "file:line:" prefixes where a file is involved.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Distance assigned to rays that hit nothing. Background samples get a
/// synthetic world point this far along the ray so reprojection treats
/// them as sky.
inline constexpr double kFarDistance = 1e6;

struct Ray {
    Vec3 origin;
    Vec3 direction;  // unit length
};

struct Hit {
    Color color;
    double depth = kFarDistance;  // Euclidean distance from the ray origin
    Vec3 world_point;
    bool is_background = false;
};

struct PositionKey {
    double t = 0.0;
    Vec3 position;
};

/// An animated sphere. The center follows piecewise-linear keyframes with
/// clamped hold outside the keyed range.
struct SceneObject {
    std::vector<PositionKey> center_track;  // keyframe times strictly increasing
    double radius = 1.0;
    Color albedo{0.8, 0.8, 0.8};
    double specular_strength = 0.0;  // Phong lobe, exponent 32

    Vec3 center_at(double t) const;
};

struct Scene {
    std::vector<SceneObject> objects;
    Vec3 light_direction{0.0, 1.0, 0.0};  // unit, surface toward light
    double light_intensity = 0.8;
    double ambient = 0.2;
    Color background;
};

struct CameraKeyframe {
    double t = 0.0;
    Vec3 eye;
    Vec3 look_at;
    Vec3 up{0.0, 1.0, 0.0};
    double vfov_deg = 60.0;
};

struct CameraPath {
    std::vector<CameraKeyframe> keyframes;  // sorted by t, strictly increasing
};

/// Pinhole camera at a fixed instant. The orthonormal basis is rebuilt from
/// the interpolated eye/look/up, so interpolated `up` need not stay exactly
/// perpendicular to the view direction.
struct Camera {
    Vec3 eye;
    Vec3 right, up, forward;  // orthonormal
    double tan_half_vfov = 1.0;

    /// Primary ray through the continuous image location (u, v) of a W x H
    /// image. No half-pixel offset is applied; callers pass the exact spot.
    Ray primary_ray(double u, double v, int width, int height) const {
        const double half_h = tan_half_vfov;
        const double half_w = tan_half_vfov * static_cast<double>(width) / height;
        const double sx = 2.0 * (u / width) - 1.0;
        const double sy = 1.0 - 2.0 * (v / height);
        return Ray{eye, normalized(forward + right * (sx * half_w) + up * (sy * half_h))};
    }

    /// Projects a world point into image coordinates. Returns false when the
    /// point lies at or behind the eye plane. depth is the Euclidean
    /// distance from the eye, matching Hit::depth.
    bool project(const Vec3& p, int width, int height, double* u, double* v,
                 double* depth) const {
        const Vec3 d = p - eye;
        const double z = dot(d, forward);
        if (z <= 1e-9) return false;
        const double half_h = tan_half_vfov;
        const double half_w = tan_half_vfov * static_cast<double>(width) / height;
        const double sx = dot(d, right) / (z * half_w);
        const double sy = dot(d, up) / (z * half_h);
        *u = (sx + 1.0) * 0.5 * width;
        *v = (1.0 - sy) * 0.5 * height;
        *depth = length(d);
        return true;
    }
};

/// Piecewise-linear interpolation of the camera keyframes with clamped hold
/// before the first and after the last. Throws ConfigError on an empty path.
Camera camera_at(const CameraPath& path, double t);

/// Nearest positive-distance intersection with the scene at time t, shaded
/// with clamped Lambert plus a Phong lobe. A miss is a valid result: it
/// yields the background color, is_background set, and depth = kFarDistance.
Hit trace(const Scene& scene, const Ray& ray, double t);

/// Distance to the nearest intersection along the ray at time t, or
/// kFarDistance on a miss. Geometry only, no shading.
double nearest_hit_distance(const Scene& scene, const Ray& ray, double t);

/// Traces the primary ray through image location (u, v) at time t and packs
/// the result as a Sample stamped with t. Throws std::invalid_argument when
/// (u, v) is outside [0, W) x [0, H).
Sample generate_sample(const Scene& scene, const CameraPath& path, double u, double v,
                       double t, int width, int height);

/// Line-based scene file: `sphere ...`, `light ...`, `background r,g,b`,
/// `#` comments. Errors name the offending line.
Scene load_scene(const std::string& path);
Scene parse_scene(const std::string& text, const std::string& name);

/// Camera path file: one `t=.. eye=.. look=.. up=.. vfov=..` keyframe per line.
CameraPath load_camera_path(const std::string& path);
CameraPath parse_camera_path(const std::string& text, const std::string& name);

}  // namespace afr
