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
#include <vector>

#include "cqed/signal.hpp"

namespace cqed {

/// Rectangular grid of phase-space points alpha = x + i y.
struct PhaseSpaceGrid {
  double x_min = -5.0, x_max = 5.0;
  double y_min = -5.0, y_max = 5.0;
  std::size_t x_points = 201, y_points = 201;

  double dx() const { return (x_max - x_min) / static_cast<double>(x_points - 1); }
  double dy() const { return (y_max - y_min) / static_cast<double>(y_points - 1); }
  complex point(std::size_t ix, std::size_t iy) const {
    return {x_min + static_cast<double>(ix) * dx(), y_min + static_cast<double>(iy) * dy()};
  }
};

struct WignerSlice {
  double eta = 0.0;
  PhaseSpaceGrid grid;
  std::vector<double> values;  // row-major, index iy * x_points + ix

  double at(std::size_t ix, std::size_t iy) const { return values[iy * grid.x_points + ix]; }
  /// Riemann sum of W over grid points with |alpha| <= radius.
  double integral_within(double radius) const;
};

/// (2/pi) e^{-2|a|^2}
double wigner_vacuum(complex alpha);
/// (2/pi) (4|a|^2 - 1) e^{-2|a|^2}
double wigner_fock1(complex alpha);
/// (1 - eta) W0 + eta W1. Throws ValidationError for eta outside [0, 1].
double wigner_value(double eta, complex alpha);

WignerSlice wigner_mixture(double eta, const PhaseSpaceGrid& grid);

}  // namespace cqed
