// Copyright 2026 The cqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Run configuration: an INI document with sections
//
//   [run]     mode = forward | inverse | roundtrip | figures
//   [model]   rabi, gamma_k, gamma_rad, delta_k, delta_p, omega_k_abs,
//             coupling = constant | sampled, coupling_file
//   [grid]    horizon, steps
//   [pump]    kind = constant | gaussian | sampled, amplitude, center, width, file
//   [target]  kind = double_gaussian | sampled, amp1, amp2, center1, center2,
//             width, rel_phase, eta_target, file
//   [output]  dir, summary
//
// Full-line comments start with ';' or '#'. Relative file paths are taken
// from the config file's directory; the output dir from the working directory.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "cqed/inverse.hpp"
#include "cqed/model.hpp"
#include "cqed/signal.hpp"

namespace cqed::toolkit {

enum class Mode { forward, inverse, roundtrip, figures };

std::optional<Mode> parse_mode(std::string_view text);
std::string_view mode_name(Mode m);

struct PumpSpec {
  enum class Kind { constant, gaussian, sampled };
  Kind kind = Kind::constant;
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;
  std::filesystem::path file;  // sampled: columns t, Omega_p [, Im Omega_p]
};

struct TargetSpec {
  DoubleGaussian shape;
  double eta_target = 0.9;
  std::optional<std::filesystem::path> file;  // sampled: columns t, Re psi [, Im psi]
};

struct OutputSpec {
  std::filesystem::path dir = "cqed_out";
  bool summary = true;
};

struct RunConfig {
  Mode mode;
  ModelParams model;
  TimeGrid grid;
  std::optional<std::filesystem::path> coupling_file;  // nullopt: g = 1
  std::optional<PumpSpec> pump;      // forward only
  std::optional<TargetSpec> target;  // inverse, roundtrip, figures
  OutputSpec output;
};

/// Parses and validates a document. `mode` (from the CLI verb) fills or must
/// match [run] mode. Without either, the mode is inferred: [pump] means
/// forward, [target] roundtrip, neither figures. Every rejection is a
/// ConfigError carrying the offending key path.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir,
                       std::optional<Mode> mode = std::nullopt);

RunConfig load_config(const std::filesystem::path& path, std::optional<Mode> mode = std::nullopt);

/// Same config on a different number of steps.
RunConfig with_steps(RunConfig config, std::size_t steps);

}  // namespace cqed::toolkit
