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

// Inverse problem: from a requested outgoing wave packet back to the drive.
//
//   target psi(tau) --> C2(t) --> D(t) --> f(t) --> Omega_p(t)
//
// C2 inverts the envelope integral exactly (psi' = sqrt(kappa gamma_rad)/2
// conj(C2) g e^{-i Delta_k t} - Gamma_k/2 psi). D(t) is C2' plus the cavity
// memory term, and equals f(t) C1(t) with C1 = 1 - int conj(f) C2, which is
// solved for f by explicit marching. For a real drive (f purely imaginary)
// this is D = f + int f(t) f(t') C2(t') dt'.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cqed/dynamics.hpp"
#include "cqed/model.hpp"
#include "cqed/signal.hpp"

namespace cqed {

/// Two Gaussian time bins,
///   psi(tau) ~ amp1 e^{-(tau-c1)^2/(4 w^2)} + amp2 e^{i rel_phase} e^{-(tau-c2)^2/(4 w^2)},
/// so |psi|^2 has standard deviation `width` per bin.
struct DoubleGaussian {
  double amp1 = 1.0;
  double amp2 = 1.0;
  double center1 = 80.0;
  double center2 = 130.0;
  double width = 8.0;
  double rel_phase = 0.0;
};

/// Arbitrary envelope samples on their own grid starting at tau = 0; resampled
/// linearly onto the working grid.
struct SampledShape {
  ComplexSignal values;
};

struct TargetShape {
  std::variant<DoubleGaussian, SampledShape> form = DoubleGaussian{};
  double eta_target = 0.9;
};

/// Relative level below which the target and its derivative must sit at tau = 0 and tau = T.
inline constexpr double kBoundaryDecay = 1e-6;

/// Target envelope on the retarded grid, normalized to int_0^T |psi|^2 = eta_target.
/// Throws ValidationError when eta_target is outside (0, gamma_rad/gamma_k] or
/// the envelope does not decay at the grid ends.
ComplexSignal make_target(const TargetShape& shape, const ModelParams& p, const TimeGrid& grid);

/// Feasibility checks: boundary decay, spectral content inside
/// |omega| <= bandwidth_factor * Gamma_k (99% of the energy), Gamma_k T >= 50,
/// and int |psi|^2 <= gamma_rad/gamma_k.
std::vector<Diagnostic> validate_target(const ComplexSignal& target, const TimeGrid& grid, const ModelParams& p,
                                        double bandwidth_factor = 5.0);

/// Amplitude C2(t) whose emission is the target:
///   C2 = 2 e^{-i Delta_k t} (conj(psi') + Gamma_k/2 conj(psi)) / (conj(sqrt(kappa)) sqrt(gamma_rad) g)
/// with psi' by centered differences. Throws ValidationError when g < 1e-6
/// somewhere or the result exceeds |C2| = 1.
ComplexSignal c2_from_target(const ComplexSignal& target, const ModelParams& p, const CouplingProfile& coupling,
                             const TimeGrid& grid);

enum class MemoryRoute {
  quadrature,  // direct O(N^2) fourth-order quadrature of the memory integral
  lift,        // RK4 on the auxiliary amplitude, O(N)
};

/// D(t) = C2' + kappa/4 g(t) int_0^t C2(t') g(t') e^{-(Gamma_k/2 + i Delta_k)(t - t')} dt'.
ComplexSignal d_from_c2(const ComplexSignal& c2, const CouplingProfile& coupling, const ModelParams& p,
                        const TimeGrid& grid, MemoryRoute route = MemoryRoute::lift);

/// Denominator magnitude below which the drive is declared singular.
inline constexpr double kSingularDenominator = 1e-6;

/// f(t) = D(t) / (1 - int_0^t conj(f) C2) by explicit marching (trapezoid,
/// one fixed-point correction per step). f(0) = D(0). Throws NumericalError
/// when the denominator (the ground-state amplitude C1) reaches zero.
ComplexSignal pump_from_dynamics(const ComplexSignal& d, const ComplexSignal& c2, const TimeGrid& grid);

struct PumpOdeSolution {
  ComplexSignal f;
  /// First step where D passes through zero. Taken alone the ODE does not fix
  /// the branch past that point; the solver keeps f / D continuous, which is
  /// the branch of f (1 - int conj(f) C2) = D.
  std::optional<std::size_t> d_zero_crossing;
};

/// Cross-check route: the ODE D f' - D' f - |f|^2 f C2 = 0, f(0) = D(0),
/// integrated by RK4 as h' = |h|^2 h conj(D) C2 with f = h D.
PumpOdeSolution pump_from_dynamics_ode(const ComplexSignal& d, const ComplexSignal& c2, const TimeGrid& grid);

/// f(t) (1 - int_0^t conj(f) C2), trapezoid rule: the right-hand side whose
/// equality with D defines f.
ComplexSignal pump_equation_rhs(const ComplexSignal& f, const ComplexSignal& c2, const TimeGrid& grid);

struct PulsePlan {
  ComplexSignal f;
  RealSignal amplitude;  // Omega_p(t) = 2 |f|
  RealSignal phase;      // arg Omega_p(t) in (-pi, pi]
  double max_amplitude = 0.0;
  /// Largest phase excursion from the phase at peak amplitude, over samples
  /// carrying at least 1e-3 of the peak amplitude.
  double residual_phase_flatness = 0.0;

  /// Complex Omega_p(t) = -2 i f(t) e^{i Delta_p t}, ready for the forward solvers.
  ComplexSignal drive(const ModelParams& p) const;
};

PulsePlan pulse_plan(const ComplexSignal& f, const ModelParams& p);

struct RoundtripOptions {
  bool validate = true;        // run validate_target and stop on diagnostics
  bool cross_check_ode = true; // also solve the ODE route and compare
};

struct RoundtripReport {
  ComplexSignal target;
  ComplexSignal c2_target;
  ComplexSignal d;
  PulsePlan plan;
  SimulationResult simulation;  // envelope and efficiency filled

  double fidelity = 0.0;
  double eta_target = 0.0;
  double eta_achieved = 0.0;
  double max_amplitude = 0.0;
  std::size_t drive_peaks = 0;
  double envelope_inversion_error = 0.0;  // sup |psi[C2 target] - target|
  double pump_residual = 0.0;             // sup |rhs - D| / max |D|
  std::optional<double> pump_route_difference;
  std::optional<std::size_t> d_zero_crossing;
  double norm_residual = 0.0;
  std::optional<double> bin_phase_difference;  // arg psi(c2) - arg psi(c1), double_gaussian only
};

/// Target -> drive -> forward simulation -> comparison. Stage failures are
/// rethrown as StageError naming the stage.
RoundtripReport roundtrip(const TargetShape& shape, const ModelParams& p, const CouplingProfile& coupling,
                          const TimeGrid& grid, const RoundtripOptions& options = {});

/// |<a|b>|^2 / (<a|a> <b|b>)
double fidelity(const ComplexSignal& a, const ComplexSignal& b);

/// Prominence fraction used when counting drive maxima.
inline constexpr double kPeakProminence = 0.05;

}  // namespace cqed
