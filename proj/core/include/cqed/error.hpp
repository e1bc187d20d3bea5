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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace cqed {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: parameters, grids, targets, files. The CLI maps this to exit 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Time marching or inversion broke down. The CLI maps this to exit 2.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what,
                          std::optional<std::size_t> step = std::nullopt)
      : Error(step ? what + " (step " + std::to_string(*step) + ")" : what),
        step_(step) {}

  std::optional<std::size_t> step() const { return step_; }

 private:
  std::optional<std::size_t> step_;
};

// Configuration rejected; key_path is "section.key" (or "section").
class ConfigError : public ValidationError {
 public:
  ConfigError(std::string key_path, const std::string& what)
      : ValidationError(key_path + ": " + what), key_path_(std::move(key_path)) {}

  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

// Failure inside a named pipeline stage. Keeps the category of the cause.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what, bool numerical)
      : Error(stage + ": " + what), stage_(std::move(stage)), numerical_(numerical) {}

  const std::string& stage() const { return stage_; }
  bool numerical() const { return numerical_; }

 private:
  std::string stage_;
  bool numerical_;
};

}  // namespace cqed
