// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#include "afr/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "afr/baselines.hpp"
#include "afr/image_io.hpp"
#include "afr/reconstructor.hpp"
#include "afr/sampler.hpp"

namespace afr {

FrameImage ground_truth(const Scene& scene, const CameraPath& path, double t, int ss,
                        int width, int height) {
    if (ss < 1) throw std::invalid_argument("ground_truth: ss must be >= 1");
    const Camera camera = camera_at(path, t);
    const double inv = 1.0 / ss;
    FrameImage out(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            Color acc;
            for (int j = 0; j < ss; ++j) {
                for (int i = 0; i < ss; ++i) {
                    const double u = x + (i + 0.5) * inv;
                    const double v = y + (j + 0.5) * inv;
                    acc += trace(scene, camera.primary_ray(u, v, width, height), t).color;
                }
            }
            out.at(x, y) = acc / static_cast<double>(ss * ss);
        }
    }
    return out;
}

double rms(const FrameImage& a, const FrameImage& b) {
    if (a.width != b.width || a.height != b.height) {
        throw std::invalid_argument("rms: image dimensions differ");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const Color ca = clamp01(a.pixels[i]);
        const Color cb = clamp01(b.pixels[i]);
        const double dr = ca.r - cb.r;
        const double dg = ca.g - cb.g;
        const double db = ca.b - cb.b;
        sum += dr * dr + dg * dg + db * db;
    }
    return std::sqrt(sum / (3.0 * static_cast<double>(a.pixels.size())));
}

namespace {

class AdaptiveRunner final : public ModeRunner {
  public:
    AdaptiveRunner(const Scene& scene, const CameraPath& path, const SimConfig& c)
        : scene_(&scene),
          path_(&path),
          sampler_(scene, path, c.width, c.height, c.budget, c.seed, c.sampler),
          params_(c.reconstructor) {}

    Mode mode() const override { return Mode::Adaptive; }
    void step(std::int64_t i) override {
        sampler_.step(i);
        ++trace_calls_;
    }
    const FrameImage& display(double t_now) override {
        frame_ = reconstruct(sampler_.buffer(), sampler_.refresh_metadata(), *path_, t_now,
                             params_, scene_->background);
        return frame_;
    }
    std::int64_t trace_calls() const override { return trace_calls_; }

  private:
    const Scene* scene_;
    const CameraPath* path_;
    AdaptiveSampler sampler_;
    ReconstructorParams params_;
    FrameImage frame_;
    std::int64_t trace_calls_ = 0;
};

class FramedRunner final : public ModeRunner {
  public:
    FramedRunner(const Scene& scene, const CameraPath& path, const SimConfig& c)
        : renderer_(scene, path, c.width, c.height, c.budget) {}

    Mode mode() const override { return Mode::Framed; }
    void step(std::int64_t i) override { renderer_.step(i); }
    const FrameImage& display(double) override { return renderer_.display(); }
    std::int64_t trace_calls() const override { return renderer_.trace_calls(); }

  private:
    FramedRenderer renderer_;
};

class FramelessRunner final : public ModeRunner {
  public:
    FramelessRunner(const Scene& scene, const CameraPath& path, const SimConfig& c)
        : renderer_(scene, path, c.width, c.height, c.budget, c.seed) {}

    Mode mode() const override { return Mode::Frameless; }
    void step(std::int64_t i) override { renderer_.step(i); }
    const FrameImage& display(double) override { return renderer_.display(); }
    std::int64_t trace_calls() const override { return renderer_.trace_calls(); }

  private:
    FramelessRenderer renderer_;
};

std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

std::unique_ptr<ModeRunner> make_runner(Mode mode, const Scene& scene, const CameraPath& path,
                                        const SimConfig& config) {
    switch (mode) {
        case Mode::Adaptive: return std::make_unique<AdaptiveRunner>(scene, path, config);
        case Mode::Framed: return std::make_unique<FramedRunner>(scene, path, config);
        case Mode::Frameless: return std::make_unique<FramelessRunner>(scene, path, config);
    }
    throw std::invalid_argument("make_runner: unknown mode");
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
    std::string out = "refresh_index,time_s,mode,rms\n";
    for (const TraceRow& row : trace) {
        out += std::to_string(row.refresh_index);
        out += ',';
        out += format_g9(row.time_s);
        out += ',';
        out += mode_name(row.mode);
        out += ',';
        out += format_g9(row.rms);
        out += '\n';
    }
    return out;
}

std::string report_to_text(const ComparisonReport& report) {
    const SimConfig& c = report.config;
    std::string out;
    out += "seed=" + std::to_string(c.seed) + " size=" + std::to_string(c.width) + "x" +
           std::to_string(c.height) + " budget=" + std::to_string(c.budget) +
           " refresh_hz=" + std::to_string(c.refresh_hz) + " duration=" +
           format_g9(c.duration) + " ss=" + std::to_string(c.ss) + "\n";
    out += "scene=" + c.scene_path + " camera=" + c.camera_path + "\n\n";
    char line[160];
    std::snprintf(line, sizeof(line), "%-10s %-14s %s\n", "mode", "mean_rms", "trace_calls");
    out += line;
    for (const ModeSummary& m : report.modes) {
        std::snprintf(line, sizeof(line), "%-10s %-14.9g %lld\n", mode_name(m.mode),
                      m.mean_rms, static_cast<long long>(m.trace_calls));
        out += line;
    }
    if (report.ratio_framed_adaptive) {
        std::snprintf(line, sizeof(line), "\nratio framed/adaptive     %.9g\n",
                      *report.ratio_framed_adaptive);
        out += line;
    }
    if (report.ratio_frameless_adaptive) {
        std::snprintf(line, sizeof(line), "ratio frameless/adaptive  %.9g\n",
                      *report.ratio_frameless_adaptive);
        out += line;
    }
    return out;
}

ComparisonResult run_comparison(const SimConfig& config) {
    validate(config);
    const Scene scene = load_scene(config.scene_path);
    const CameraPath path = load_camera_path(config.camera_path);

    const bool writing = !config.out_dir.empty();
    if (writing) std::filesystem::create_directories(config.out_dir);

    std::vector<std::unique_ptr<ModeRunner>> runners;
    runners.reserve(config.modes.size());
    for (const Mode m : config.modes) runners.push_back(make_runner(m, scene, path, config));

    const auto refreshes =
        static_cast<std::int64_t>(std::floor(config.duration * config.refresh_hz + 1e-9));
    ComparisonResult result;
    result.report.config = config;
    std::vector<double> rms_sum(runners.size(), 0.0);

    std::int64_t consumed = 0;
    for (std::int64_t k = 1; k <= refreshes; ++k) {
        const std::int64_t due = config.budget * k / config.refresh_hz;
        for (std::int64_t i = consumed; i < due; ++i) {
            for (auto& runner : runners) runner->step(i);
        }
        consumed = due;
        const double t_k = static_cast<double>(k) / config.refresh_hz;
        const FrameImage reference =
            ground_truth(scene, path, t_k, config.ss, config.width, config.height);
        const bool dump = writing && config.dump_every > 0 && k % config.dump_every == 0;
        if (dump) {
            write_image(reference, config.out_dir + "/gt_" + std::to_string(k) + ".ppm");
        }
        for (std::size_t r = 0; r < runners.size(); ++r) {
            const FrameImage& shown = runners[r]->display(t_k);
            const double err = rms(shown, reference);
            rms_sum[r] += err;
            result.trace.push_back(TraceRow{k, t_k, runners[r]->mode(), err});
            if (dump) {
                write_image(shown, config.out_dir + "/" +
                                       std::string(mode_name(runners[r]->mode())) + "_" +
                                       std::to_string(k) + ".ppm");
            }
        }
    }

    std::optional<double> adaptive_mean, framed_mean, frameless_mean;
    for (std::size_t r = 0; r < runners.size(); ++r) {
        ModeSummary s;
        s.mode = runners[r]->mode();
        s.mean_rms = refreshes > 0 ? rms_sum[r] / static_cast<double>(refreshes) : 0.0;
        s.trace_calls = runners[r]->trace_calls();
        result.report.modes.push_back(s);
        if (s.mode == Mode::Adaptive) adaptive_mean = s.mean_rms;
        if (s.mode == Mode::Framed) framed_mean = s.mean_rms;
        if (s.mode == Mode::Frameless) frameless_mean = s.mean_rms;
    }
    if (adaptive_mean && *adaptive_mean > 0.0) {
        if (framed_mean) result.report.ratio_framed_adaptive = *framed_mean / *adaptive_mean;
        if (frameless_mean) {
            result.report.ratio_frameless_adaptive = *frameless_mean / *adaptive_mean;
        }
    }

    if (writing) {
        std::ofstream csv(config.out_dir + "/trace.csv", std::ios::binary);
        if (!csv) throw std::runtime_error("run_comparison: cannot write trace.csv");
        const std::string data = trace_to_csv(result.trace);
        csv.write(data.data(), static_cast<std::streamsize>(data.size()));
        std::ofstream summary(config.out_dir + "/summary.txt", std::ios::binary);
        if (!summary) throw std::runtime_error("run_comparison: cannot write summary.txt");
        const std::string text = report_to_text(result.report);
        summary.write(text.data(), static_cast<std::streamsize>(text.size()));
    }
    return result;
}

std::optional<double> response_latency(const Scene& scene, const CameraPath& path,
                                       const std::vector<std::pair<double, FrameImage>>& frames,
                                       double event_t, double threshold, double fraction,
                                       int ss) {
    if (frames.empty()) return std::nullopt;
    const int width = frames.front().second.width;
    const int height = frames.front().second.height;

    // Last displayed frame at or before the event.
    const FrameImage* pre_display = nullptr;
    for (const auto& [t, img] : frames) {
        if (t <= event_t) pre_display = &img;
    }
    if (pre_display == nullptr) return std::nullopt;

    // Post-event reference at the first refresh past the event; pre-event
    // reference exactly at the event (a step keyed at event_t still reads
    // its left value there).
    std::optional<double> post_t;
    for (const auto& [t, img] : frames) {
        if (t > event_t) {
            post_t = t;
            break;
        }
    }
    if (!post_t) return std::nullopt;
    const FrameImage gt_pre = ground_truth(scene, path, event_t, ss, width, height);
    const FrameImage gt_post = ground_truth(scene, path, *post_t, ss, width, height);

    const auto changed = [threshold](const Color& a, const Color& b) {
        const Color ca = clamp01(a), cb = clamp01(b);
        return std::abs(ca.r - cb.r) > threshold || std::abs(ca.g - cb.g) > threshold ||
               std::abs(ca.b - cb.b) > threshold;
    };

    std::vector<std::size_t> affected;
    for (std::size_t i = 0; i < gt_pre.pixels.size(); ++i) {
        if (changed(gt_pre.pixels[i], gt_post.pixels[i])) affected.push_back(i);
    }
    if (affected.empty()) return std::nullopt;
    const auto needed =
        static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(affected.size())));

    for (const auto& [t, img] : frames) {
        if (t <= event_t) continue;
        std::size_t hits = 0;
        for (const std::size_t i : affected) {
            if (changed(img.pixels[i], pre_display->pixels[i])) ++hits;
        }
        if (hits >= needed) return t - event_t;
    }
    return std::nullopt;
}

}  // namespace afr
