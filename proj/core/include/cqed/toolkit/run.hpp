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

#include <ostream>

#include "cqed/toolkit/config.hpp"

namespace cqed::toolkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Runs the configured pipeline and writes its artifacts:
///   forward    forward.csv
///   inverse    pulse.csv, reconstruction.csv
///   roundtrip  pulse.csv, forward.csv
///   figures    fig5a.csv, fig5b.csv
/// plus summary.txt unless disabled. Failures go to `diag` with the stage name.
int run(const RunConfig& config, std::ostream& diag);

/// Config and target checks only, nothing written.
int validate(const RunConfig& config, std::ostream& diag);

}  // namespace cqed::toolkit
