// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "afr/bandwidth.hpp"
#include "afr/config.hpp"
#include "afr/eval.hpp"
#include "afr/image_io.hpp"

namespace {

struct CommonFlags {
    std::optional<std::string> config_file;
    std::optional<std::string> scene;
    std::optional<std::string> camera_path;
    std::optional<std::string> mode;
    std::optional<std::int64_t> budget;
    std::optional<int> refresh_hz;
    std::optional<double> duration;
    std::optional<std::uint64_t> seed;
    std::optional<int> width;
    std::optional<int> height;
    std::optional<int> ss;
    std::optional<std::string> out_dir;
    std::optional<int> dump_every;
};

void add_common_flags(CLI::App* cmd, CommonFlags* f) {
    cmd->add_option("--config", f->config_file, "sectioned key=value config file");
    cmd->add_option("--scene", f->scene, "scene file");
    cmd->add_option("--camera-path", f->camera_path, "camera path file");
    cmd->add_option("--mode", f->mode, "framed|frameless|adaptive (comma list or 'all')");
    cmd->add_option("--budget", f->budget, "samples per second");
    cmd->add_option("--refresh-hz", f->refresh_hz, "display refresh rate");
    cmd->add_option("--duration", f->duration, "simulated seconds");
    cmd->add_option("--seed", f->seed, "rng seed");
    cmd->add_option("--width", f->width, "image width in px");
    cmd->add_option("--height", f->height, "image height in px");
    cmd->add_option("--ss", f->ss, "ground-truth supersampling factor");
    cmd->add_option("--out-dir", f->out_dir, "artifact output directory");
    cmd->add_option("--dump-every", f->dump_every, "dump images every N refreshes");
}

// File config first, then CLI flags on top.
afr::SimConfig resolve_config(const CommonFlags& f) {
    afr::SimConfig c;
    if (f.config_file) c = afr::parse_config(*f.config_file);
    if (f.scene) c.scene_path = *f.scene;
    if (f.camera_path) c.camera_path = *f.camera_path;
    if (f.mode) {
        const afr::SimConfig parsed =
            afr::parse_config_text("mode=" + *f.mode, "--mode");
        c.modes = parsed.modes;
    }
    if (f.budget) c.budget = *f.budget;
    if (f.refresh_hz) c.refresh_hz = *f.refresh_hz;
    if (f.duration) c.duration = *f.duration;
    if (f.seed) c.seed = *f.seed;
    if (f.width) c.width = *f.width;
    if (f.height) c.height = *f.height;
    if (f.ss) c.ss = *f.ss;
    if (f.out_dir) c.out_dir = *f.out_dir;
    if (f.dump_every) c.dump_every = *f.dump_every;
    if (c.scene_path.empty()) throw afr::ConfigError("no scene given (--scene or config)");
    if (c.camera_path.empty()) {
        throw afr::ConfigError("no camera path given (--camera-path or config)");
    }
    afr::validate(c);
    return c;
}

int cmd_compare(const CommonFlags& flags) {
    afr::SimConfig config = resolve_config(flags);
    if (config.out_dir.empty()) config.out_dir = "out";
    const afr::ComparisonResult result = afr::run_comparison(config);
    std::fputs(afr::report_to_text(result.report).c_str(), stdout);
    std::printf("artifacts written to %s\n", config.out_dir.c_str());
    return 0;
}

int cmd_render(const CommonFlags& flags) {
    afr::SimConfig config = resolve_config(flags);
    if (config.modes.size() != 1) {
        throw afr::ConfigError("render needs exactly one --mode");
    }
    if (config.out_dir.empty()) config.out_dir = "out";
    std::filesystem::create_directories(config.out_dir);

    const afr::Scene scene = afr::load_scene(config.scene_path);
    const afr::CameraPath path = afr::load_camera_path(config.camera_path);
    const auto runner = afr::make_runner(config.modes[0], scene, path, config);

    const auto refreshes =
        static_cast<std::int64_t>(config.duration * config.refresh_hz + 1e-9);
    std::int64_t consumed = 0;
    for (std::int64_t k = 1; k <= refreshes; ++k) {
        const std::int64_t due = config.budget * k / config.refresh_hz;
        for (std::int64_t i = consumed; i < due; ++i) runner->step(i);
        consumed = due;
        const double t_k = static_cast<double>(k) / config.refresh_hz;
        const afr::FrameImage& shown = runner->display(t_k);
        const bool last = k == refreshes;
        if (last || (config.dump_every > 0 && k % config.dump_every == 0)) {
            const std::string name = config.out_dir + "/" +
                                     afr::mode_name(config.modes[0]) + "_" +
                                     std::to_string(k) + ".ppm";
            afr::write_image(shown, name);
            std::printf("%s\n", name.c_str());
        }
    }
    return 0;
}

int cmd_gt(const CommonFlags& flags, double t) {
    afr::SimConfig config = resolve_config(flags);
    if (config.out_dir.empty()) config.out_dir = "out";
    std::filesystem::create_directories(config.out_dir);
    const afr::Scene scene = afr::load_scene(config.scene_path);
    const afr::CameraPath path = afr::load_camera_path(config.camera_path);
    const afr::FrameImage img =
        afr::ground_truth(scene, path, t, config.ss, config.width, config.height);
    const std::string name = config.out_dir + "/gt.ppm";
    afr::write_image(img, name);
    std::printf("%s\n", name.c_str());
    return 0;
}

std::string si_format(double value, const char* unit) {
    static const struct { double scale; const char* prefix; } steps[] = {
        {1e12, "tera"}, {1e9, "giga"}, {1e6, "mega"}, {1e3, "kilo"}, {1.0, ""},
    };
    char buf[96];
    for (const auto& s : steps) {
        if (value >= s.scale || s.scale == 1.0) {
            std::snprintf(buf, sizeof(buf), "%.4g %s%s", value / s.scale, s.prefix, unit);
            return buf;
        }
    }
    return buf;
}

int cmd_bandwidth(double width_in, double height_in, double dpi, double hz, double bpp) {
    const afr::DisplaySpec spec{width_in, height_in, dpi, hz, bpp};
    const std::int64_t pixels = afr::pixel_count(spec);
    const afr::LinkRate rate =
        afr::link_rate(static_cast<double>(pixels), spec.refresh_hz, spec.bits_per_pixel);
    std::printf("display      %.4g in x %.4g in @ %.4g dpi, %.4g Hz, %.4g bpp\n",
                spec.width_in, spec.height_in, spec.dpi, spec.refresh_hz,
                spec.bits_per_pixel);
    std::printf("pixels       %lld  (%s)\n", static_cast<long long>(pixels),
                si_format(static_cast<double>(pixels), "pixels").c_str());
    std::printf("pixel rate   %.6g px/s  (%s/s)\n", rate.pixels_per_s,
                si_format(rate.pixels_per_s, "pixels").c_str());
    std::printf("link rate    %.6g b/s  (%s/s)\n", rate.bits_per_s,
                si_format(rate.bits_per_s, "bits").c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive frameless rendering testbed"};
    app.require_subcommand(1);

    CommonFlags flags;
    CLI::App* compare = app.add_subcommand(
        "compare", "run the configured modes and score them against ground truth");
    add_common_flags(compare, &flags);

    CLI::App* render =
        app.add_subcommand("render", "run a single mode and dump displayed frames");
    add_common_flags(render, &flags);

    double gt_t = 0.0;
    CLI::App* gt = app.add_subcommand("gt", "write one supersampled ground-truth image");
    add_common_flags(gt, &flags);
    gt->add_option("--t", gt_t, "scene time in seconds");

    double bw_width = 0.0, bw_height = 0.0, bw_dpi = 0.0, bw_hz = 60.0, bw_bpp = 24.0;
    CLI::App* bandwidth =
        app.add_subcommand("bandwidth", "display pixel-count and link-rate calculator");
    bandwidth->add_option("--width-in", bw_width, "display width in inches")->required();
    bandwidth->add_option("--height-in", bw_height, "display height in inches")->required();
    bandwidth->add_option("--dpi", bw_dpi, "dots per inch")->required();
    bandwidth->add_option("--hz", bw_hz, "refresh rate");
    bandwidth->add_option("--bpp", bw_bpp, "bits per pixel");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compare->parsed()) return cmd_compare(flags);
        if (render->parsed()) return cmd_render(flags);
        if (gt->parsed()) return cmd_gt(flags, gt_t);
        if (bandwidth->parsed()) {
            return cmd_bandwidth(bw_width, bw_height, bw_dpi, bw_hz, bw_bpp);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
