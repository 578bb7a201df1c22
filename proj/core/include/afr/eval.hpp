// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "afr/config.hpp"
#include "afr/frame_image.hpp"
#include "afr/scene.hpp"

namespace afr {

/// Reference image: each pixel is the box average of ss x ss regular-grid
/// sub-samples traced at exactly time t. ss = 1 traces pixel centers.
FrameImage ground_truth(const Scene& scene, const CameraPath& path, double t, int ss,
                        int width, int height);

/// Root-mean-square per-channel difference on [0,1]-clamped values.
/// Throws std::invalid_argument on mismatched dimensions.
double rms(const FrameImage& a, const FrameImage& b);

struct TraceRow {
    std::int64_t refresh_index = 0;
    double time_s = 0.0;
    Mode mode = Mode::Adaptive;
    double rms = 0.0;
};

struct ModeSummary {
    Mode mode = Mode::Adaptive;
    double mean_rms = 0.0;
    std::int64_t trace_calls = 0;
};

struct ComparisonReport {
    std::vector<ModeSummary> modes;
    std::optional<double> ratio_framed_adaptive;
    std::optional<double> ratio_frameless_adaptive;
    SimConfig config;  // echo of the run configuration (seed included)
};

struct ComparisonResult {
    ComparisonReport report;
    std::vector<TraceRow> trace;
};

/// One renderer driven on the shared virtual clock. step() consumes sample
/// indices in order; display() is a pure read of the current image.
class ModeRunner {
  public:
    virtual ~ModeRunner() = default;
    virtual Mode mode() const = 0;
    virtual void step(std::int64_t i) = 0;
    virtual const FrameImage& display(double t_now) = 0;
    virtual std::int64_t trace_calls() const = 0;
};

std::unique_ptr<ModeRunner> make_runner(Mode mode, const Scene& scene, const CameraPath& path,
                                        const SimConfig& config);

/// Runs every configured mode on the shared virtual clock: sample i lands at
/// t = i/budget, refresh k at t = k/refresh_hz, and exactly
/// floor(budget*k/hz) samples are consumed before refresh k. Each refresh
/// scores the displayed image against ss-supersampled ground truth. When
/// config.out_dir is set, writes trace.csv, summary.txt, and (with
/// dump_every > 0) PPM dumps. Byte-deterministic for a given config.
ComparisonResult run_comparison(const SimConfig& config);

/// Time from a camera-path step event at event_t to the first refresh at
/// which at least `fraction` of the ground-truth-visible change has appeared
/// in the displayed sequence (per-pixel change above `threshold` on any
/// channel, measured against the last pre-event displayed frame). Returns
/// nothing when that never happens or no pixel visibly changes.
std::optional<double> response_latency(const Scene& scene, const CameraPath& path,
                                       const std::vector<std::pair<double, FrameImage>>& frames,
                                       double event_t, double threshold, double fraction,
                                       int ss);

/// CSV with the exact header `refresh_index,time_s,mode,rms` and %.9g
/// numeric formatting.
std::string trace_to_csv(const std::vector<TraceRow>& trace);

/// Aligned plain-text run summary: per-mode mean RMS and accuracy ratios.
std::string report_to_text(const ComparisonReport& report);

}  // namespace afr
