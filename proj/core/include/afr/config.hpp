// Copyright 2026 The afr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "afr/reconstructor.hpp"
#include "afr/sampler.hpp"
#include "afr/scene.hpp"

namespace afr {

enum class Mode { Adaptive, Framed, Frameless };

const char* mode_name(Mode mode);
std::optional<Mode> mode_from_name(const std::string& name);

/// Full experiment description: image size, virtual sample budget, refresh
/// rate, duration, seed, modes, assets, outputs, and every module constant.
struct SimConfig {
    int width = 128;
    int height = 128;
    std::int64_t budget = 400000;  // samples per second (virtual clock)
    int refresh_hz = 60;
    double duration = 4.0;
    std::uint64_t seed = 1;
    std::vector<Mode> modes = {Mode::Adaptive, Mode::Framed, Mode::Frameless};
    std::string scene_path;
    std::string camera_path;
    std::string out_dir;
    int dump_every = 0;  // dump images every N refreshes; 0 disables
    int ss = 4;          // ground-truth supersampling factor
    SamplerParams sampler;
    ReconstructorParams reconstructor;
};

/// parse_config applies a sectioned key=value file ([sim], [sampler],
/// [reconstructor], [eval]) on top of the defaults. Unknown sections or
/// keys, malformed lines, and bad numbers are ConfigErrors naming file and
/// line. CLI flags are applied by the caller after parsing, then validated.
SimConfig parse_config(const std::string& path);
SimConfig parse_config_text(const std::string& text, const std::string& name);

/// Enforces cross-field invariants (budget >= refresh rate, duration > 0,
/// image at least 8x8, ...). Throws ConfigError.
void validate(const SimConfig& config);

}  // namespace afr
