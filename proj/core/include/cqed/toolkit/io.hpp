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

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cqed/signal.hpp"

namespace cqed::toolkit {

/// Fixed scientific notation with 17 significant digits ("-1.2345678901234567e-05").
std::string format_double(double v);

struct Column {
  std::string name;
  std::span<const double> values;
};

/// One header line, then one row per sample. All columns must have equal length.
void write_csv(const std::filesystem::path& path, const std::vector<Column>& columns);

struct Table {
  std::vector<std::string> header;          // empty when the file has none
  std::vector<std::vector<double>> columns;
};

/// Numeric text: '#' comment lines, an optional non-numeric header line,
/// comma or whitespace separators, a constant column count.
Table read_table(const std::filesystem::path& path);

/// Reads columns t, v1, v2, ... (between min_values and max_values value
/// columns), checks t is increasing and covers [0, horizon], and linearly
/// resamples each value column onto the grid.
std::vector<std::vector<double>> read_sampled(const std::filesystem::path& path, const TimeGrid& grid,
                                              std::size_t min_values, std::size_t max_values);

using Summary = std::vector<std::pair<std::string, std::string>>;

/// "key: value" per line.
void write_summary(const std::filesystem::path& path, const Summary& summary);

}  // namespace cqed::toolkit
