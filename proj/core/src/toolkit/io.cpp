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

#include "cqed/toolkit/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cqed/error.hpp"
#include "cqed/numerics.hpp"

namespace cqed::toolkit {

namespace fs = std::filesystem;

std::string format_double(double v) {
  std::array<char, 40> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 16);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf.data(), ptr);
}

void write_csv(const fs::path& path, const std::vector<Column>& columns) {
  if (columns.empty()) throw Error("write_csv: no columns");
  const std::size_t rows = columns.front().values.size();
  for (const auto& c : columns) {
    if (c.values.size() != rows) throw Error("write_csv: column '" + c.name + "' has a different length");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (std::size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << columns[j].name;
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << format_double(columns[j].values[i]);
    out << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

namespace {

bool parse_row(const std::string& line, std::vector<double>& row) {
  row.clear();
  std::string cleaned = line;
  for (auto& ch : cleaned) {
    if (ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
  }
  std::istringstream in(cleaned);
  std::string token;
  while (in >> token) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) return false;
    row.push_back(v);
  }
  return true;
}

std::vector<std::string> split_header(const std::string& line) {
  std::vector<std::string> out;
  std::string cleaned = line;
  for (auto& ch : cleaned) {
    if (ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
  }
  std::istringstream in(cleaned);
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

}  // namespace

Table read_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  Table table;
  std::string line;
  std::vector<double> row;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!parse_row(line, row)) {
      if (seen_data || !table.header.empty()) {
        throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": non-numeric value");
      }
      table.header = split_header(line);
      continue;
    }
    if (!seen_data) {
      table.columns.resize(row.size());
      seen_data = true;
    }
    if (row.size() != table.columns.size()) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.columns.size()) + " columns, got " + std::to_string(row.size()));
    }
    for (std::size_t j = 0; j < row.size(); ++j) table.columns[j].push_back(row[j]);
  }
  if (!seen_data) throw ValidationError(path.string() + ": no data rows");
  return table;
}

std::vector<std::vector<double>> read_sampled(const fs::path& path, const TimeGrid& grid, std::size_t min_values,
                                              std::size_t max_values) {
  const Table table = read_table(path);
  const std::size_t values = table.columns.size() - 1;
  if (table.columns.size() < 2 || values < min_values || values > max_values) {
    throw ValidationError(path.string() + ": expected a time column and " + std::to_string(min_values) + ".." +
                          std::to_string(max_values) + " value columns");
  }
  const auto& t = table.columns[0];
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw ValidationError(path.string() + ": time column must be strictly increasing");
  }
  const double slack = 1e-9 * grid.horizon();
  if (t.front() > slack || t.back() < grid.horizon() - slack) {
    throw ValidationError(path.string() + ": samples cover [" + format_double(t.front()) + ", " +
                          format_double(t.back()) + "], need [0, " + format_double(grid.horizon()) + "]");
  }
  std::vector<std::vector<double>> out(values, std::vector<double>(grid.size()));
  for (std::size_t j = 0; j < values; ++j) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out[j][i] = numerics::linear_interpolate(t, table.columns[j + 1], grid.time(i));
    }
  }
  return out;
}

void write_summary(const fs::path& path, const Summary& summary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& [key, value] : summary) out << key << ": " << value << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace cqed::toolkit
