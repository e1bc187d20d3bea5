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

#include <vector>

#include "cqed/signal.hpp"

namespace cqed {

/// Samples of a frequency-domain mode function on a centered grid
/// omega_k = k * d_omega, k = -M/2 .. M/2-1.
struct Spectrum {
  std::vector<double> omega;
  std::vector<complex> amplitude;
  double d_omega = 0.0;

  /// sum |F|^2 d_omega
  double norm() const;
};

/// F(omega) = (1/sqrt(2 pi)) int psi(tau) e^{i omega tau} d tau by a
/// zero-padded DFT (padding >= 1 multiplies the transform length). Parseval
/// holds exactly: norm() == dt * sum |psi_n|^2.
Spectrum fourier_transform(std::span<const complex> samples, double dt, std::size_t padding = 4);

/// Mode function F_1(omega) of the outgoing packet: the transform of the
/// envelope scaled to unit norm. Throws ValidationError when the envelope is
/// zero or has not decayed below 1e-3 of its peak by the end of the grid.
Spectrum spectrum(const ComplexSignal& envelope, const TimeGrid& grid, std::size_t padding = 4);

/// Fraction of sum |F|^2 inside |omega| <= limit.
double spectral_fraction_within(const Spectrum& s, double limit);

}  // namespace cqed
