// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#include "afr/scene.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace afr {

namespace {

constexpr double kMinHitDistance = 1e-9;
constexpr double kPi = 3.14159265358979323846;

double lerp(double a, double b, double f) { return a + (b - a) * f; }

Vec3 lerp(const Vec3& a, const Vec3& b, double f) {
    return {lerp(a.x, b.x, f), lerp(a.y, b.y, f), lerp(a.z, b.z, f)};
}

// Bracketing-keyframe lookup shared by object tracks and the camera path.
// Returns (index of the segment start, interpolation fraction). A fraction of
// exactly 0 means "use the keyframe values verbatim": queries at keyframe
// times and clamped holds never go through the lerp and stay bit-exact.
template <class Key>
std::pair<std::size_t, double> bracket(const std::vector<Key>& keys, double t) {
    if (t <= keys.front().t) return {0, 0.0};
    if (t >= keys.back().t) return {keys.size() - 1, 0.0};
    std::size_t hi = 1;
    while (keys[hi].t < t) ++hi;
    if (keys[hi].t == t) return {hi, 0.0};
    const std::size_t lo = hi - 1;
    const double span = keys[hi].t - keys[lo].t;
    return {lo, (t - keys[lo].t) / span};
}

}  // namespace

Vec3 SceneObject::center_at(double t) const {
    if (center_track.empty()) return {};
    if (center_track.size() == 1) return center_track.front().position;
    auto [lo, f] = bracket(center_track, t);
    if (f == 0.0) return center_track[lo].position;
    return lerp(center_track[lo].position, center_track[lo + 1].position, f);
}

Camera camera_at(const CameraPath& path, double t) {
    if (path.keyframes.empty()) throw ConfigError("camera path is empty");

    CameraKeyframe k;
    if (path.keyframes.size() == 1) {
        k = path.keyframes.front();
    } else {
        auto [lo, f] = bracket(path.keyframes, t);
        const CameraKeyframe& a = path.keyframes[lo];
        if (f == 0.0) {
            k = a;
        } else {
            const CameraKeyframe& b = path.keyframes[lo + 1];
            k.eye = lerp(a.eye, b.eye, f);
            k.look_at = lerp(a.look_at, b.look_at, f);
            k.up = lerp(a.up, b.up, f);
            k.vfov_deg = lerp(a.vfov_deg, b.vfov_deg, f);
        }
    }

    Camera cam;
    cam.eye = k.eye;
    cam.forward = normalized(k.look_at - k.eye);
    cam.right = normalized(cross(cam.forward, k.up));
    cam.up = cross(cam.right, cam.forward);
    cam.tan_half_vfov = std::tan(k.vfov_deg * 0.5 * kPi / 180.0);
    return cam;
}

Hit trace(const Scene& scene, const Ray& ray, double t) {
    double best = kFarDistance;
    const SceneObject* hit_obj = nullptr;
    Vec3 hit_center;

    for (const SceneObject& obj : scene.objects) {
        const Vec3 c = obj.center_at(t);
        const Vec3 oc = ray.origin - c;
        const double b = dot(oc, ray.direction);
        const double disc = b * b - (dot(oc, oc) - obj.radius * obj.radius);
        if (disc < 0.0) continue;
        const double sq = std::sqrt(disc);
        double s = -b - sq;
        if (s <= kMinHitDistance) s = -b + sq;
        if (s <= kMinHitDistance || s >= best) continue;
        best = s;
        hit_obj = &obj;
        hit_center = c;
    }

    if (hit_obj == nullptr) {
        return Hit{scene.background, kFarDistance, ray.origin + ray.direction * kFarDistance,
                   true};
    }

    const Vec3 p = ray.origin + ray.direction * best;
    const Vec3 n = normalized(p - hit_center);
    const Vec3& l = scene.light_direction;
    const double diffuse =
        clamp01(scene.ambient + scene.light_intensity * std::max(0.0, dot(n, l)));
    const Vec3 refl = n * (2.0 * dot(n, l)) - l;
    const double rv = std::max(0.0, dot(refl, -ray.direction));
    const double specular =
        hit_obj->specular_strength * std::pow(rv, 32.0) * scene.light_intensity;

    Color c = hit_obj->albedo * diffuse;
    c.r += specular;
    c.g += specular;
    c.b += specular;
    return Hit{c, best, p, false};
}

double nearest_hit_distance(const Scene& scene, const Ray& ray, double t) {
    double best = kFarDistance;
    for (const SceneObject& obj : scene.objects) {
        const Vec3 oc = ray.origin - obj.center_at(t);
        const double b = dot(oc, ray.direction);
        const double disc = b * b - (dot(oc, oc) - obj.radius * obj.radius);
        if (disc < 0.0) continue;
        const double sq = std::sqrt(disc);
        double s = -b - sq;
        if (s <= kMinHitDistance) s = -b + sq;
        if (s > kMinHitDistance && s < best) best = s;
    }
    return best;
}

Sample generate_sample(const Scene& scene, const CameraPath& path, double u, double v,
                       double t, int width, int height) {
    if (!(u >= 0.0 && u < width && v >= 0.0 && v < height)) {
        throw std::invalid_argument("generate_sample: image location out of bounds");
    }
    const Camera cam = camera_at(path, t);
    const Hit hit = trace(scene, cam.primary_ray(u, v, width, height), t);
    return Sample{u, v, hit.color, hit.depth, hit.world_point, t, hit.is_background};
}

// ---------------------------------------------------------------------------
// File parsing
// ---------------------------------------------------------------------------

namespace {

struct LineContext {
    const std::string& name;
    int line;

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError(name + ":" + std::to_string(line) + ": " + what);
    }
};

double parse_double(std::string_view s, const LineContext& ctx) {
    double value = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) ctx.fail("bad number '" + std::string(s) + "'");
    if (!std::isfinite(value)) ctx.fail("non-finite number '" + std::string(s) + "'");
    return value;
}

Vec3 parse_vec3(std::string_view s, const LineContext& ctx) {
    const auto c1 = s.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : s.find(',', c1 + 1);
    if (c2 == std::string_view::npos) ctx.fail("expected x,y,z in '" + std::string(s) + "'");
    return {parse_double(s.substr(0, c1), ctx), parse_double(s.substr(c1 + 1, c2 - c1 - 1), ctx),
            parse_double(s.substr(c2 + 1), ctx)};
}

Color parse_color(std::string_view s, const LineContext& ctx) {
    const Vec3 v = parse_vec3(s, ctx);
    return {v.x, v.y, v.z};
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
    }
    return tokens;
}

// Splits "key=value"; returns empty key for bare words.
std::pair<std::string_view, std::string_view> split_kv(const std::string& tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) return {std::string_view{}, std::string_view(tok)};
    return {std::string_view(tok).substr(0, eq), std::string_view(tok).substr(eq + 1)};
}

template <class Fn>
void for_each_line(const std::string& text, Fn&& fn) {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        fn(line, number);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

Scene parse_scene(const std::string& text, const std::string& name) {
    Scene scene;
    for_each_line(text, [&](const std::string& line, int number) {
        const LineContext ctx{name, number};
        const auto tokens = tokenize(line);
        if (tokens.empty()) return;

        if (tokens[0] == "sphere") {
            SceneObject obj;
            obj.albedo = Color{0.8, 0.8, 0.8};
            std::size_t i = 1;
            while (i < tokens.size() && tokens[i] != "key") {
                auto [key, value] = split_kv(tokens[i]);
                if (key == "r") {
                    obj.radius = parse_double(value, ctx);
                } else if (key == "albedo") {
                    obj.albedo = parse_color(value, ctx);
                } else if (key == "spec") {
                    obj.specular_strength = parse_double(value, ctx);
                } else {
                    ctx.fail("unknown sphere attribute '" + std::string(tokens[i]) + "'");
                }
                ++i;
            }
            while (i < tokens.size()) {
                if (tokens[i] != "key" || i + 2 >= tokens.size()) {
                    ctx.fail("expected 'key t=<f> c=<f>,<f>,<f>'");
                }
                PositionKey k;
                auto [tk, tv] = split_kv(tokens[i + 1]);
                auto [ck, cv] = split_kv(tokens[i + 2]);
                if (tk != "t" || ck != "c") ctx.fail("expected 'key t=<f> c=<f>,<f>,<f>'");
                k.t = parse_double(tv, ctx);
                k.position = parse_vec3(cv, ctx);
                if (!obj.center_track.empty() && k.t <= obj.center_track.back().t) {
                    ctx.fail("keyframe times must be strictly increasing");
                }
                obj.center_track.push_back(k);
                i += 3;
            }
            if (obj.radius <= 0.0) ctx.fail("sphere radius must be > 0");
            if (obj.center_track.empty()) ctx.fail("sphere needs at least one key");
            scene.objects.push_back(std::move(obj));
        } else if (tokens[0] == "light") {
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                auto [key, value] = split_kv(tokens[i]);
                if (key == "dir") {
                    scene.light_direction = normalized(parse_vec3(value, ctx));
                } else if (key == "intensity") {
                    scene.light_intensity = parse_double(value, ctx);
                } else if (key == "ambient") {
                    scene.ambient = parse_double(value, ctx);
                } else {
                    ctx.fail("unknown light attribute '" + std::string(tokens[i]) + "'");
                }
            }
            if (scene.light_intensity < 0.0 || scene.ambient < 0.0) {
                ctx.fail("light intensity and ambient must be >= 0");
            }
        } else if (tokens[0] == "background") {
            if (tokens.size() != 2) ctx.fail("expected 'background <f>,<f>,<f>'");
            scene.background = parse_color(tokens[1], ctx);
        } else {
            ctx.fail("unknown directive '" + tokens[0] + "'");
        }
    });
    return scene;
}

Scene load_scene(const std::string& path) { return parse_scene(read_file(path), path); }

CameraPath parse_camera_path(const std::string& text, const std::string& name) {
    CameraPath path;
    for_each_line(text, [&](const std::string& line, int number) {
        const LineContext ctx{name, number};
        const auto tokens = tokenize(line);
        if (tokens.empty()) return;

        CameraKeyframe k;
        bool have_t = false, have_eye = false, have_look = false;
        for (const std::string& tok : tokens) {
            auto [key, value] = split_kv(tok);
            if (key == "t") {
                k.t = parse_double(value, ctx);
                have_t = true;
            } else if (key == "eye") {
                k.eye = parse_vec3(value, ctx);
                have_eye = true;
            } else if (key == "look") {
                k.look_at = parse_vec3(value, ctx);
                have_look = true;
            } else if (key == "up") {
                k.up = parse_vec3(value, ctx);
            } else if (key == "vfov") {
                k.vfov_deg = parse_double(value, ctx);
            } else {
                ctx.fail("unknown keyframe attribute '" + tok + "'");
            }
        }
        if (!have_t || !have_eye || !have_look) ctx.fail("keyframe needs t=, eye=, look=");
        if (!(k.vfov_deg > 0.0 && k.vfov_deg < 180.0)) ctx.fail("vfov must be in (0, 180)");
        if (length_squared(k.look_at - k.eye) == 0.0) ctx.fail("eye and look must differ");
        if (!path.keyframes.empty() && k.t <= path.keyframes.back().t) {
            ctx.fail("keyframe times must be strictly increasing");
        }
        path.keyframes.push_back(k);
    });
    if (path.keyframes.empty()) throw ConfigError(name + ": camera path has no keyframes");
    return path;
}

CameraPath load_camera_path(const std::string& path) {
    return parse_camera_path(read_file(path), path);
}

}  // namespace afr
