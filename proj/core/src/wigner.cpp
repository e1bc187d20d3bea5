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

#include "cqed/wigner.hpp"

#include <cmath>
#include <numbers>

namespace cqed {

namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("Wigner mixture weight must lie in [0, 1]");
}

}  // namespace

double wigner_vacuum(complex alpha) { return 2.0 / std::numbers::pi * std::exp(-2.0 * std::norm(alpha)); }

double wigner_fock1(complex alpha) {
  const double r2 = std::norm(alpha);
  return 2.0 / std::numbers::pi * (4.0 * r2 - 1.0) * std::exp(-2.0 * r2);
}

double wigner_value(double eta, complex alpha) {
  check_eta(eta);
  return (1.0 - eta) * wigner_vacuum(alpha) + eta * wigner_fock1(alpha);
}

WignerSlice wigner_mixture(double eta, const PhaseSpaceGrid& grid) {
  check_eta(eta);
  if (grid.x_points < 2 || grid.y_points < 2 || !(grid.x_max > grid.x_min) || !(grid.y_max > grid.y_min)) {
    throw ValidationError("phase-space grid needs at least 2x2 points and positive extent");
  }
  WignerSlice slice{eta, grid, std::vector<double>(grid.x_points * grid.y_points)};
  for (std::size_t iy = 0; iy < grid.y_points; ++iy) {
    for (std::size_t ix = 0; ix < grid.x_points; ++ix) {
      slice.values[iy * grid.x_points + ix] = wigner_value(eta, grid.point(ix, iy));
    }
  }
  return slice;
}

double WignerSlice::integral_within(double radius) const {
  double acc = 0.0;
  for (std::size_t iy = 0; iy < grid.y_points; ++iy) {
    for (std::size_t ix = 0; ix < grid.x_points; ++ix) {
      if (std::abs(grid.point(ix, iy)) <= radius) acc += at(ix, iy);
    }
  }
  return acc * grid.dx() * grid.dy();
}

}  // namespace cqed
