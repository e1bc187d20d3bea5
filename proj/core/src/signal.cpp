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

#include "cqed/signal.hpp"

#include <algorithm>

#include "cqed/numerics.hpp"

namespace cqed {

TimeGrid::TimeGrid(double horizon, std::size_t steps)
    : horizon_(horizon), steps_(steps), dt_(horizon / static_cast<double>(steps)) {
  if (!std::isfinite(horizon) || horizon <= 0.0) {
    throw ValidationError("grid horizon must be positive and finite");
  }
  if (steps < 2) {
    throw ValidationError("grid needs at least 2 intervals");
  }
}

template <class T>
T Signal<T>::at(double t) const {
  const double x = std::clamp(t / grid_.dt(), 0.0, static_cast<double>(grid_.steps()));
  return numerics::interpolate<T>(values_, x);
}

template class Signal<double>;
template class Signal<complex>;

ComplexSignal to_complex(const RealSignal& s) {
  std::vector<complex> v(s.begin(), s.end());
  return ComplexSignal(s.grid(), std::move(v));
}

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const std::string& what) {
  if (!(a == b)) {
    throw ValidationError("grid mismatch: " + what);
  }
}

}  // namespace cqed
