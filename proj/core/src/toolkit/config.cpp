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

#include "cqed/toolkit/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cqed/dynamics.hpp"
#include "cqed/error.hpp"

namespace cqed::toolkit {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"run", {"mode"}},
      {"model", {"rabi", "gamma_k", "gamma_rad", "delta_k", "delta_p", "omega_k_abs", "coupling", "coupling_file"}},
      {"grid", {"horizon", "steps"}},
      {"pump", {"kind", "amplitude", "center", "width", "file"}},
      {"target",
       {"kind", "amp1", "amp2", "center1", "center2", "width", "rel_phase", "eta_target", "file"}},
      {"output", {"dir", "summary"}},
  };
  return s;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  bool has_section(const std::string& section) const { return tree_.find(section) != tree_.not_found(); }

  bool has(const std::string& section, const std::string& key) const {
    return has_section(section) && tree_.get_child(section).find(key) != tree_.get_child(section).not_found();
  }

  std::string text(const std::string& section, const std::string& key) const {
    const auto raw = tree_.get_child(section).get<std::string>(key);
    const std::string value = trim(raw);
    if (value.empty()) throw ConfigError(section + "." + key, "empty value");
    return value;
  }

  std::string required_text(const std::string& section, const std::string& key) const {
    if (!has(section, key)) throw ConfigError(section + "." + key, "missing required key");
    return text(section, key);
  }

  double number(const std::string& section, const std::string& key, double fallback) const {
    return has(section, key) ? parse_number(section, key) : fallback;
  }

  double required_number(const std::string& section, const std::string& key) const {
    if (!has(section, key)) throw ConfigError(section + "." + key, "missing required key");
    return parse_number(section, key);
  }

  std::size_t required_count(const std::string& section, const std::string& key) const {
    if (!has(section, key)) throw ConfigError(section + "." + key, "missing required key");
    const std::string value = text(section, key);
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw ConfigError(section + "." + key, "expected a non-negative integer, got '" + value + "'");
    }
    return out;
  }

  bool flag(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string value = text(section, key);
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError(section + "." + key, "expected true or false, got '" + value + "'");
  }

 private:
  double parse_number(const std::string& section, const std::string& key) const {
    const std::string value = text(section, key);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out)) {
      throw ConfigError(section + "." + key, "expected a finite number, got '" + value + "'");
    }
    return out;
  }

  const pt::ptree& tree_;
};

void check_shape(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) throw ConfigError(section, "key outside any section");
    const auto it = schema().find(section);
    if (it == schema().end()) throw ConfigError(section, "unknown section");
    for (const auto& [key, value] : body) {
      if (!value.empty()) throw ConfigError(section + "." + key, "nested keys are not supported");
      if (!it->second.contains(key)) throw ConfigError(section + "." + key, "unknown key");
    }
  }
}

fs::path existing_file(const Reader& r, const std::string& section, const std::string& key, const fs::path& base) {
  fs::path p = r.required_text(section, key);
  if (p.is_relative()) p = base / p;
  if (!fs::is_regular_file(p)) throw ConfigError(section + "." + key, "file not found: " + p.string());
  return p;
}

ModelParams read_model(const Reader& r) {
  ModelParams m;
  m.rabi = r.number("model", "rabi", m.rabi);
  m.gamma_k = r.number("model", "gamma_k", m.gamma_k);
  m.gamma_rad = r.number("model", "gamma_rad", m.gamma_rad);
  m.delta_k = r.number("model", "delta_k", m.delta_k);
  m.delta_p = r.number("model", "delta_p", m.delta_p);
  if (r.has("model", "omega_k_abs")) m.omega_k_abs = r.required_number("model", "omega_k_abs");
  const auto diags = validate_params(m);
  if (!diags.empty()) throw ConfigError("model." + diags.front().field, diags.front().message);
  return m;
}

PumpSpec read_pump(const Reader& r, const fs::path& base) {
  PumpSpec pump;
  const std::string kind = r.required_text("pump", "kind");
  auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      if (r.has("pump", k)) throw ConfigError(std::string("pump.") + k, "not used by pump kind '" + kind + "'");
    }
  };
  if (kind == "constant") {
    pump.kind = PumpSpec::Kind::constant;
    pump.amplitude = r.required_number("pump", "amplitude");
    forbid({"center", "width", "file"});
  } else if (kind == "gaussian") {
    pump.kind = PumpSpec::Kind::gaussian;
    pump.amplitude = r.required_number("pump", "amplitude");
    pump.center = r.required_number("pump", "center");
    pump.width = r.required_number("pump", "width");
    if (!(pump.width > 0.0)) throw ConfigError("pump.width", "must be positive");
    forbid({"file"});
  } else if (kind == "sampled") {
    pump.kind = PumpSpec::Kind::sampled;
    pump.file = existing_file(r, "pump", "file", base);
    forbid({"amplitude", "center", "width"});
  } else {
    throw ConfigError("pump.kind", "expected constant, gaussian or sampled, got '" + kind + "'");
  }
  if (pump.kind != PumpSpec::Kind::sampled && pump.amplitude < 0.0) {
    throw ConfigError("pump.amplitude", "must be >= 0");
  }
  return pump;
}

TargetSpec read_target(const Reader& r, const fs::path& base) {
  TargetSpec t;
  const std::string kind = r.has("target", "kind") ? r.text("target", "kind") : "double_gaussian";
  t.eta_target = r.number("target", "eta_target", t.eta_target);
  if (!(t.eta_target > 0.0 && t.eta_target <= 1.0)) throw ConfigError("target.eta_target", "must lie in (0, 1]");
  if (kind == "double_gaussian") {
    if (r.has("target", "file")) throw ConfigError("target.file", "not used by target kind 'double_gaussian'");
    DoubleGaussian& s = t.shape;
    s.amp1 = r.number("target", "amp1", s.amp1);
    s.amp2 = r.number("target", "amp2", s.amp2);
    s.center1 = r.number("target", "center1", s.center1);
    s.center2 = r.number("target", "center2", s.center2);
    s.width = r.number("target", "width", s.width);
    s.rel_phase = r.number("target", "rel_phase", s.rel_phase);
    if (s.amp1 < 0.0) throw ConfigError("target.amp1", "must be >= 0");
    if (s.amp2 < 0.0) throw ConfigError("target.amp2", "must be >= 0");
    if (s.amp1 + s.amp2 == 0.0) throw ConfigError("target.amp1", "both bin weights are zero");
    if (!(s.width > 0.0)) throw ConfigError("target.width", "must be positive");
    if (!(s.center1 < s.center2)) throw ConfigError("target.center2", "must exceed target.center1");
  } else if (kind == "sampled") {
    for (const char* k : {"amp1", "amp2", "center1", "center2", "width", "rel_phase"}) {
      if (r.has("target", k)) throw ConfigError(std::string("target.") + k, "not used by target kind 'sampled'");
    }
    t.file = existing_file(r, "target", "file", base);
  } else {
    throw ConfigError("target.kind", "expected double_gaussian or sampled, got '" + kind + "'");
  }
  return t;
}

}  // namespace

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "forward") return Mode::forward;
  if (text == "inverse") return Mode::inverse;
  if (text == "roundtrip") return Mode::roundtrip;
  if (text == "figures") return Mode::figures;
  return std::nullopt;
}

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::forward: return "forward";
    case Mode::inverse: return "inverse";
    case Mode::roundtrip: return "roundtrip";
    case Mode::figures: return "figures";
  }
  return "unknown";
}

RunConfig parse_config(const std::string& text, const fs::path& base_dir, std::optional<Mode> mode) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("document", "line " + std::to_string(e.line()) + ": " + e.message());
  }
  check_shape(tree);
  const Reader r(tree);

  if (r.has("run", "mode")) {
    const std::string name = r.text("run", "mode");
    const auto declared = parse_mode(name);
    if (!declared) throw ConfigError("run.mode", "expected forward, inverse, roundtrip or figures, got '" + name + "'");
    if (mode && *mode != *declared) {
      throw ConfigError("run.mode", "document says '" + name + "' but '" + std::string(mode_name(*mode)) +
                                        "' was requested");
    }
    mode = declared;
  }
  if (!mode) mode = r.has_section("pump") ? Mode::forward : r.has_section("target") ? Mode::roundtrip : Mode::figures;

  if (*mode == Mode::forward && r.has_section("target")) {
    throw ConfigError("target", "extraneous section for forward mode");
  }
  if (*mode != Mode::forward && r.has_section("pump")) {
    throw ConfigError("pump", "extraneous section for " + std::string(mode_name(*mode)) + " mode");
  }
  if (*mode == Mode::forward && !r.has_section("pump")) throw ConfigError("pump", "missing required section");
  if ((*mode == Mode::inverse || *mode == Mode::roundtrip) && !r.has_section("target")) {
    throw ConfigError("target", "missing required section");
  }

  ModelParams model = read_model(r);

  const double horizon = r.required_number("grid", "horizon");
  if (!(horizon > 0.0)) throw ConfigError("grid.horizon", "must be positive");
  const std::size_t steps = r.required_count("grid", "steps");
  if (steps < kMinForwardSteps) {
    throw ConfigError("grid.steps", "must be at least " + std::to_string(kMinForwardSteps));
  }

  std::optional<fs::path> coupling_file;
  const std::string coupling = r.has("model", "coupling") ? r.text("model", "coupling") : "constant";
  if (coupling == "sampled") {
    coupling_file = existing_file(r, "model", "coupling_file", base_dir);
  } else if (coupling == "constant") {
    if (r.has("model", "coupling_file")) throw ConfigError("model.coupling_file", "not used with constant coupling");
  } else {
    throw ConfigError("model.coupling", "expected constant or sampled, got '" + coupling + "'");
  }

  std::optional<PumpSpec> pump;
  std::optional<TargetSpec> target;
  if (*mode == Mode::forward) pump = read_pump(r, base_dir);
  if (r.has_section("target")) target = read_target(r, base_dir);
  if (*mode == Mode::figures && target && target->file) {
    throw ConfigError("target.file", "figures mode uses the double_gaussian target");
  }
  if (target && target->eta_target > model.gamma_rad / model.gamma_k) {
    throw ConfigError("target.eta_target", "exceeds model.gamma_rad / model.gamma_k");
  }

  OutputSpec output;
  if (r.has("output", "dir")) output.dir = r.text("output", "dir");
  output.summary = r.flag("output", "summary", output.summary);

  return RunConfig{*mode, model, TimeGrid(horizon, steps), coupling_file, pump, target, output};
}

RunConfig load_config(const fs::path& path, std::optional<Mode> mode) {
  std::ifstream in(path);
  if (!in) throw ConfigError("document", "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path(), mode);
}

RunConfig with_steps(RunConfig config, std::size_t steps) {
  if (steps < kMinForwardSteps) {
    throw ConfigError("grid.steps", "must be at least " + std::to_string(kMinForwardSteps));
  }
  config.grid = TimeGrid(config.grid.horizon(), steps);
  return config;
}

}  // namespace cqed::toolkit
