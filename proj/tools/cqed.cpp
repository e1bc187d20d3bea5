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

// cqed command-line front end.
//
//   cqed <verb> --config <path> [--out <dir>] [--steps N]
//
// verbs: forward, inverse, roundtrip, figures, validate.
// exit: 0 success, 1 validation failure, 2 numerical failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "cqed/error.hpp"
#include "cqed/toolkit/config.hpp"
#include "cqed/toolkit/run.hpp"

namespace tk = cqed::toolkit;

int main(int argc, char** argv) {
  CLI::App app{"Single-photon emission from a pumped Lambda emitter in a cavity"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::size_t steps = 0;

  const char* verbs[][2] = {
      {"forward", "integrate the dynamics for a given drive"},
      {"inverse", "synthesize the drive for a target wave packet"},
      {"roundtrip", "synthesize, then simulate the synthesized drive"},
      {"figures", "reproduce the two time-bin examples (in phase, pi phase)"},
      {"validate", "check the config and target, write nothing"},
  };
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "INI run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides [output] dir)");
    sub->add_option("--steps", steps, "number of time steps (overrides [grid] steps)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : tk::kExitValidation;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  const bool validating = verb == "validate";
  try {
    std::optional<tk::Mode> mode;
    if (!validating) mode = tk::parse_mode(verb);
    tk::RunConfig config = tk::load_config(config_path, mode);
    if (steps != 0) config = tk::with_steps(std::move(config), steps);
    if (!out_dir.empty()) config.output.dir = out_dir;
    if (validating) {
      const int code = tk::validate(config, std::cerr);
      if (code == tk::kExitOk) std::cout << "ok: " << tk::mode_name(config.mode) << " config is valid\n";
      return code;
    }
    return tk::run(config, std::cerr);
  } catch (const cqed::ConfigError& e) {
    std::cerr << "error: config " << e.what() << '\n';
    return tk::kExitValidation;
  } catch (const cqed::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tk::kExitValidation;
  }
}
