// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#include "afr/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace afr {

const char* mode_name(Mode mode) {
    switch (mode) {
        case Mode::Adaptive: return "adaptive";
        case Mode::Framed: return "framed";
        case Mode::Frameless: return "frameless";
    }
    return "?";
}

std::optional<Mode> mode_from_name(const std::string& name) {
    if (name == "adaptive") return Mode::Adaptive;
    if (name == "framed") return Mode::Framed;
    if (name == "frameless") return Mode::Frameless;
    return std::nullopt;
}

namespace {

struct Where {
    const std::string& file;
    int line;

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError(file + ":" + std::to_string(line) + ": " + what);
    }
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const Where& w) {
    double out = 0.0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
        w.fail("bad number '" + v + "'");
    }
    return out;
}

std::int64_t to_int(const std::string& v, const Where& w) {
    std::int64_t out = 0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) w.fail("bad integer '" + v + "'");
    return out;
}

std::uint64_t to_uint(const std::string& v, const Where& w) {
    std::uint64_t out = 0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) w.fail("bad unsigned integer '" + v + "'");
    return out;
}

std::vector<Mode> to_modes(const std::string& v, const Where& w) {
    std::vector<Mode> modes;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item == "all") {
            return {Mode::Adaptive, Mode::Framed, Mode::Frameless};
        }
        const auto m = mode_from_name(item);
        if (!m) w.fail("unknown mode '" + item + "'");
        modes.push_back(*m);
    }
    if (modes.empty()) w.fail("empty mode list");
    return modes;
}

void apply_sim(SimConfig& c, const std::string& key, const std::string& v, const Where& w) {
    if (key == "width") c.width = static_cast<int>(to_int(v, w));
    else if (key == "height") c.height = static_cast<int>(to_int(v, w));
    else if (key == "budget") c.budget = to_int(v, w);
    else if (key == "refresh_hz") c.refresh_hz = static_cast<int>(to_int(v, w));
    else if (key == "duration") c.duration = to_double(v, w);
    else if (key == "seed") c.seed = to_uint(v, w);
    else if (key == "mode") c.modes = to_modes(v, w);
    else if (key == "scene") c.scene_path = v;
    else if (key == "camera_path") c.camera_path = v;
    else if (key == "out_dir") c.out_dir = v;
    else if (key == "dump_every") c.dump_every = static_cast<int>(to_int(v, w));
    else w.fail("unknown key '" + key + "' in [sim]");
}

void apply_sampler(SamplerParams& p, const std::string& key, const std::string& v,
                   const Where& w) {
    if (key == "tau_stats") p.tau_stats = to_double(v, w);
    else if (key == "r_grad") p.r_grad = to_double(v, w);
    else if (key == "r_match") p.r_match = to_double(v, w);
    else if (key == "reproject_per_sample") p.reproject_per_sample = static_cast<int>(to_int(v, w));
    else if (key == "reproject_cycle_s") p.reproject_cycle_s = to_double(v, w);
    else if (key == "rebalance_interval") p.rebalance_interval = static_cast<int>(to_int(v, w));
    else if (key == "rebalance_max_ops") p.rebalance_max_ops = static_cast<int>(to_int(v, w));
    else if (key == "n_min") p.n_min = static_cast<int>(to_int(v, w));
    else if (key == "n_max") p.n_max = static_cast<int>(to_int(v, w));
    else if (key == "kappa") p.kappa = to_double(v, w);
    else if (key == "eps_importance") p.eps_importance = to_double(v, w);
    else if (key == "lambda") p.lambda = to_double(v, w);
    else if (key == "eps_control") p.eps_control = to_double(v, w);
    else if (key == "hysteresis") p.hysteresis = to_double(v, w);
    else if (key == "rho") p.rho = to_double(v, w);
    else if (key == "bucket_capacity") p.bucket_capacity = static_cast<int>(to_int(v, w));
    else w.fail("unknown key '" + key + "' in [sampler]");
}

void apply_reconstructor(ReconstructorParams& p, const std::string& key, const std::string& v,
                         const Where& w) {
    if (key == "c_s") p.c_s = to_double(v, w);
    else if (key == "c_t") p.c_t = to_double(v, w);
    else if (key == "sigma_s_min") p.sigma_s_min = to_double(v, w);
    else if (key == "sigma_s_max") p.sigma_s_max = to_double(v, w);
    else if (key == "sigma_t_min") p.sigma_t_min = to_double(v, w);
    else if (key == "sigma_t_max") p.sigma_t_max = to_double(v, w);
    else if (key == "d_floor") p.d_floor = to_double(v, w);
    else if (key == "eps_g") p.eps_g = to_double(v, w);
    else if (key == "w_floor") p.w_floor = to_double(v, w);
    else if (key == "r_fallback") p.r_fallback = to_double(v, w);
    else w.fail("unknown key '" + key + "' in [reconstructor]");
}

void apply_eval(SimConfig& c, const std::string& key, const std::string& v, const Where& w) {
    if (key == "ss") c.ss = static_cast<int>(to_int(v, w));
    else w.fail("unknown key '" + key + "' in [eval]");
}

}  // namespace

SimConfig parse_config_text(const std::string& text, const std::string& name) {
    SimConfig config;
    std::istringstream in(text);
    std::string raw;
    std::string section = "sim";
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const Where w{name, line};
        const auto hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') w.fail("malformed section header");
            section = s.substr(1, s.size() - 2);
            if (section != "sim" && section != "sampler" && section != "reconstructor" &&
                section != "eval") {
                w.fail("unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) w.fail("expected key=value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) w.fail("empty key");
        if (section == "sim") apply_sim(config, key, value, w);
        else if (section == "sampler") apply_sampler(config.sampler, key, value, w);
        else if (section == "reconstructor") apply_reconstructor(config.reconstructor, key, value, w);
        else apply_eval(config, key, value, w);
    }
    return config;
}

SimConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

void validate(const SimConfig& c) {
    if (c.width < 8 || c.height < 8) throw ConfigError("width and height must be >= 8");
    if (c.duration <= 0.0) throw ConfigError("duration must be > 0");
    if (c.refresh_hz <= 0) throw ConfigError("refresh_hz must be > 0");
    if (c.budget < c.refresh_hz) throw ConfigError("budget must be >= refresh_hz");
    if (c.ss < 1) throw ConfigError("ss must be >= 1");
    if (c.modes.empty()) throw ConfigError("at least one mode is required");
    if (c.sampler.n_min < 1 || c.sampler.n_max < c.sampler.n_min) {
        throw ConfigError("[sampler] requires 1 <= n_min <= n_max");
    }
    if (c.sampler.bucket_capacity < 1) throw ConfigError("[sampler] bucket_capacity must be >= 1");
    if (c.sampler.tau_stats <= 0.0) throw ConfigError("[sampler] tau_stats must be > 0");
    if (c.reconstructor.sigma_s_min <= 0.0 ||
        c.reconstructor.sigma_s_max < c.reconstructor.sigma_s_min) {
        throw ConfigError("[reconstructor] requires 0 < sigma_s_min <= sigma_s_max");
    }
    if (c.reconstructor.sigma_t_min <= 0.0 ||
        c.reconstructor.sigma_t_max < c.reconstructor.sigma_t_min) {
        throw ConfigError("[reconstructor] requires 0 < sigma_t_min <= sigma_t_max");
    }
}

}  // namespace afr
