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

#include "cqed/spectrum.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "cqed/numerics.hpp"

namespace cqed {

namespace {

// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

struct PlanDeleter {
  void operator()(fftw_plan p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

using PlanHandle = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

}  // namespace

double Spectrum::norm() const {
  double acc = 0.0;
  for (const auto& a : amplitude) acc += std::norm(a);
  return acc * d_omega;
}

Spectrum fourier_transform(std::span<const complex> samples, double dt, std::size_t padding) {
  if (samples.empty()) throw ValidationError("fourier_transform needs samples");
  const std::size_t m = std::bit_ceil(samples.size() * std::max<std::size_t>(padding, 1));

  std::unique_ptr<fftw_complex, FftwFree> buffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m)));
  PlanHandle plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(static_cast<int>(m), buffer.get(), buffer.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
  }
  auto* data = reinterpret_cast<complex*>(buffer.get());
  std::fill(data, data + m, complex{});
  std::copy(samples.begin(), samples.end(), data);
  fftw_execute(plan.get());

  // FFTW_BACKWARD is sum x_n e^{+2 pi i k n / m}, the sign we want.
  Spectrum s;
  s.d_omega = 2.0 * std::numbers::pi / (static_cast<double>(m) * dt);
  s.omega.resize(m);
  s.amplitude.resize(m);
  const double scale = dt / std::sqrt(2.0 * std::numbers::pi);
  const std::size_t half = m / 2;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = (i + half) % m;  // centered order
    const auto signed_k = static_cast<double>(i) - static_cast<double>(half);
    s.omega[i] = signed_k * s.d_omega;
    s.amplitude[i] = scale * data[k];
  }
  return s;
}

Spectrum spectrum(const ComplexSignal& envelope, const TimeGrid& grid, std::size_t padding) {
  require_same_grid(envelope.grid(), grid, "envelope");
  const double peak = numerics::max_abs(envelope.values());
  if (peak == 0.0) throw ValidationError("spectrum of an all-zero envelope");
  if (std::abs(envelope[grid.steps()]) >= 1e-3 * peak) {
    throw ValidationError("envelope has not decayed by the end of the grid (|psi(T)| >= 1e-3 max|psi|)");
  }
  double energy = 0.0;
  for (const auto& v : envelope) energy += std::norm(v);
  energy *= grid.dt();
  Spectrum s = fourier_transform(envelope.values(), grid.dt(), padding);
  const double inv = 1.0 / std::sqrt(energy);
  for (auto& a : s.amplitude) a *= inv;
  return s;
}

double spectral_fraction_within(const Spectrum& s, double limit) {
  double inside = 0.0, total = 0.0;
  for (std::size_t i = 0; i < s.omega.size(); ++i) {
    const double e = std::norm(s.amplitude[i]);
    total += e;
    if (std::abs(s.omega[i]) <= limit) inside += e;
  }
  return total > 0.0 ? inside / total : 0.0;
}

}  // namespace cqed
