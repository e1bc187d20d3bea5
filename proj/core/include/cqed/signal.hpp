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

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "cqed/error.hpp"

namespace cqed {

using complex = std::complex<double>;

/// Uniform time grid t_i = i * horizon / steps, i = 0..steps, in units of 1/Gamma_k.
class TimeGrid {
 public:
  TimeGrid(double horizon, std::size_t steps);

  double horizon() const { return horizon_; }
  std::size_t steps() const { return steps_; }
  std::size_t size() const { return steps_ + 1; }
  double dt() const { return dt_; }
  double time(std::size_t i) const { return i == steps_ ? horizon_ : static_cast<double>(i) * dt_; }

  bool operator==(const TimeGrid&) const = default;

 private:
  double horizon_;
  std::size_t steps_;
  double dt_;
};

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Samples of a function on a TimeGrid. Immutable after construction; every
/// entry is finite.
template <class T>
class Signal {
 public:
  using value_type = T;

  /// All-zero signal.
  explicit Signal(const TimeGrid& grid) : grid_(grid), values_(grid.size(), T{}) {}

  Signal(const TimeGrid& grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw ValidationError("signal has " + std::to_string(values_.size()) +
                            " samples, grid needs " + std::to_string(grid_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!is_finite(values_[i])) {
        throw ValidationError("signal sample " + std::to_string(i) + " is not finite");
      }
    }
  }

  const TimeGrid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const T& operator[](std::size_t i) const { return values_[i]; }
  std::span<const T> values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  /// Cubic Lagrange interpolation; exact at grid nodes.
  T at(double t) const;

 private:
  TimeGrid grid_;
  std::vector<T> values_;
};

using ComplexSignal = Signal<complex>;
using RealSignal = Signal<double>;

ComplexSignal to_complex(const RealSignal& s);

/// Throws ValidationError naming `what` when the grids differ.
void require_same_grid(const TimeGrid& a, const TimeGrid& b, const std::string& what);

extern template class Signal<double>;
extern template class Signal<complex>;

}  // namespace cqed
