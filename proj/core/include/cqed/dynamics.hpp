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

// Forward problem: the excited-state amplitude C2(t) from a given drive, by
// two independent routes, and the outgoing wave packet it radiates.
//
// The drive is passed as samples of Omega_p(t). Complex samples are accepted
// (a phase-modulated drive); the pump enters as f(t) = (i/2) Omega_p(t)
// e^{-i Delta_p t} with C1' = -conj(f) C2, which for a real Omega_p is the
// usual pair of amplitude equations.

#include <optional>

#include "cqed/model.hpp"
#include "cqed/signal.hpp"

namespace cqed {

struct SimulationResult {
  ComplexSignal c2;
  std::optional<ComplexSignal> c1;        // solve_local only
  std::optional<ComplexSignal> cavity;    // B(t), solve_local only
  std::optional<ComplexSignal> envelope;  // psi(tau)
  std::optional<RealSignal> efficiency;   // eta(t)
  double norm_residual = 0.0;
};

/// Smallest grid accepted by the forward solvers.
inline constexpr std::size_t kMinForwardSteps = 16;

/// f(t) = (i/2) Omega_p(t) e^{-i Delta_p t} on the drive's grid.
ComplexSignal pump_factor(const ComplexSignal& drive, const ModelParams& p);

/// Integro-differential form
///   C2' = f(t) + int_0^t K(t,t') C2(t') dt',  C2(0) = 0,
/// by trapezoidal product integration with one predictor and one corrector
/// per step. Second order in dt; O(N^2) work for the cavity memory.
/// norm_residual is filled from C1 and B recovered by quadrature.
SimulationResult solve_volterra(const ModelParams& p, const ComplexSignal& drive, const CouplingProfile& coupling,
                                const TimeGrid& grid);

/// Local form with the cavity memory carried by the amplitude B:
///   C1' = -conj(f) C2
///   C2' = f C1 - (sqrt(kappa)/2) g B
///   B'  = -(Gamma_k/2 + i Delta_k) B + (sqrt(kappa)/2) g C2
/// with C1(0) = 1, C2(0) = B(0) = 0, classical RK4. Drive and coupling are
/// interpolated to half steps with cubics.
SimulationResult solve_local(const ModelParams& p, const ComplexSignal& drive, const CouplingProfile& coupling,
                             const TimeGrid& grid);

/// Unnormalized outgoing envelope on the retarded grid:
///   psi(tau) = sqrt(kappa gamma_rad)/2 int_0^tau conj(C2) g e^{-i Delta_k t'} e^{-(Gamma_k/2)(tau - t')} dt'.
/// In the narrowband limit psi = sqrt(gamma_rad) conj(B) e^{-i Delta_k tau}.
ComplexSignal emission_envelope(const ComplexSignal& c2, const CouplingProfile& coupling, const ModelParams& p,
                                const TimeGrid& grid);

/// eta(t) = gamma_rad int_0^t |B|^2.
RealSignal efficiency_from_cavity(const ComplexSignal& cavity, const ModelParams& p);
/// eta(t) = int_0^t |psi|^2.
RealSignal efficiency_from_envelope(const ComplexSignal& envelope);
/// Uses the cavity amplitude when present, else the envelope.
RealSignal efficiency_curve(const SimulationResult& result, const ModelParams& p, const TimeGrid& grid);

/// max_t | |C1|^2 + |C2|^2 + |B|^2 + Gamma_k int_0^t |B|^2 - 1 |.
double norm_residual(const SimulationResult& result, const ModelParams& p, const TimeGrid& grid);

/// solve_local followed by envelope, efficiency and residual.
SimulationResult simulate_emission(const ModelParams& p, const ComplexSignal& drive,
                                   const CouplingProfile& coupling, const TimeGrid& grid);

/// I_n = int_0^{t_n} e^{-rate (t_n - t')} h(t') dt', fourth order per interval.
std::vector<complex> exp_convolution(std::span<const complex> h, complex rate, double dt);

}  // namespace cqed
