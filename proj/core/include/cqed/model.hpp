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

// Physical parameters of the pumped Lambda emitter in a single-mode lossy
// cavity, and the memory kernel of the reduced amplitude equation.
//
// Units: hbar = eps0 = c = A = 1, and all rates are multiples of the cavity
// linewidth Gamma_k (times are multiples of 1/Gamma_k). The carrier at the
// mode frequency is factored out of every envelope (omega_31 = 0 frame).

#include <optional>
#include <string>
#include <vector>

#include "cqed/signal.hpp"

namespace cqed {

struct Diagnostic {
  std::string field;
  std::string message;
};

struct ModelParams {
  double rabi = 2.0;       // vacuum Rabi frequency R_k
  double gamma_k = 1.0;    // total cavity linewidth Gamma_k
  double gamma_rad = 1.0;  // useful (output mirror) part of Gamma_k
  double delta_k = 0.0;    // omega_k - omega_23
  double delta_p = 0.0;    // omega_p - omega_21
  /// Absolute mode frequency omega_k. Absent means the narrowband limit.
  std::optional<double> omega_k_abs;

  /// Parameter set of the double-peak reference runs: R_k = 2, Delta_k =
  /// Delta_p = 0, gamma_rad = Gamma_k.
  static ModelParams reference() { return {}; }
};

/// Cavity coupling strength kappa entering the kernel as -kappa/4 g g'.
/// Narrowband: kappa = R_k^2. With omega_k known: R_k^2 (1 - i Gamma_k / (2 omega_k)).
complex coupling_strength(const ModelParams& p);

/// Rate s with e^{-s (t - t')} the cavity memory factor: s = Gamma_k/2 + i Delta_k.
complex cavity_rate(const ModelParams& p);

/// One entry per violated invariant; empty means valid.
std::vector<Diagnostic> validate_params(const ModelParams& p);

struct GeometryParams {
  double dipole_sq = 1.0;  // |d_23|^2
  double area = 1.0;       // coupling mirror area
  double length = 1.0;     // cavity length l
  double z_emitter = -0.5; // emitter position, inside (-l, 0)
  double omega_k = 1.0;    // mode frequency
};

/// alpha_k = 4 |d|^2 / (A l) sin^2(omega_k z_A). Throws ValidationError for
/// invalid geometry.
double coupling_constant(const GeometryParams& geom);

/// R_k = sqrt(alpha_k omega_k).
double vacuum_rabi(const GeometryParams& geom);

/// Emitter-cavity interaction shape g(t). Either identically zero (decoupled)
/// or nonnegative with maximum exactly 1.
class CouplingProfile {
 public:
  static CouplingProfile constant(const TimeGrid& grid);
  static CouplingProfile decoupled(const TimeGrid& grid);
  /// Throws ValidationError on negative samples or max != 1.
  static CouplingProfile from_samples(RealSignal samples);

  const RealSignal& samples() const { return samples_; }
  const TimeGrid& grid() const { return samples_.grid(); }
  double operator[](std::size_t i) const { return samples_[i]; }
  double at(double t) const { return samples_.at(t); }

 private:
  explicit CouplingProfile(RealSignal s) : samples_(std::move(s)) {}
  RealSignal samples_;
};

struct KernelTerms {
  complex pump;
  complex cavity;
  complex total() const { return pump + cavity; }
};

/// Both kernel terms at (t, t') without ordering checks:
///   pump   = -1/4 Omega(t) conj(Omega(t')) e^{-i Delta_p (t - t')}
///   cavity = -1/4 kappa g(t) g(t') e^{-(Gamma_k/2 + i Delta_k)(t - t')}
/// For a real drive the pump term is the textbook -1/4 Omega Omega'.
KernelTerms kernel_terms(const ModelParams& p, const ComplexSignal& pump, const CouplingProfile& coupling,
                         double t, double t_prime);

/// K(t, t') for 0 <= t' <= t <= horizon; anything else throws std::invalid_argument.
complex kernel_eval(const ModelParams& p, const ComplexSignal& pump, const CouplingProfile& coupling, double t,
                    double t_prime);

}  // namespace cqed
