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

#include "cqed/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cqed {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

complex coupling_strength(const ModelParams& p) {
  const double r2 = p.rabi * p.rabi;
  if (!p.omega_k_abs) return {r2, 0.0};
  return r2 * complex(1.0, -p.gamma_k / (2.0 * *p.omega_k_abs));
}

complex cavity_rate(const ModelParams& p) { return {0.5 * p.gamma_k, p.delta_k}; }

std::vector<Diagnostic> validate_params(const ModelParams& p) {
  std::vector<Diagnostic> out;
  auto finite = [&](double v, const char* name) {
    if (!std::isfinite(v)) out.push_back({name, "must be finite"});
    return std::isfinite(v);
  };
  if (finite(p.rabi, "rabi") && p.rabi < 0.0) out.push_back({"rabi", "must be >= 0, got " + fmt(p.rabi)});
  if (finite(p.gamma_k, "gamma_k") && p.gamma_k <= 0.0) {
    out.push_back({"gamma_k", "must be > 0, got " + fmt(p.gamma_k)});
  }
  if (finite(p.gamma_rad, "gamma_rad")) {
    if (p.gamma_rad <= 0.0) {
      out.push_back({"gamma_rad", "must be > 0, got " + fmt(p.gamma_rad)});
    } else if (std::isfinite(p.gamma_k) && p.gamma_rad > p.gamma_k) {
      out.push_back({"gamma_rad", "radiative fraction gamma_rad/gamma_k = " + fmt(p.gamma_rad / p.gamma_k) +
                                      " exceeds 1"});
    }
  }
  finite(p.delta_k, "delta_k");
  finite(p.delta_p, "delta_p");
  if (p.omega_k_abs && finite(*p.omega_k_abs, "omega_k_abs") && *p.omega_k_abs < 100.0 * p.gamma_k) {
    out.push_back({"omega_k_abs", "must be >= 100*gamma_k (high-Q regime), got " + fmt(*p.omega_k_abs)});
  }
  return out;
}

double coupling_constant(const GeometryParams& g) {
  if (!(g.dipole_sq > 0.0) || !(g.area > 0.0) || !(g.length > 0.0) || !(g.omega_k > 0.0)) {
    throw ValidationError("geometry: dipole_sq, area, length and omega_k must be positive");
  }
  if (!(g.z_emitter < 0.0 && g.z_emitter > -g.length)) {
    throw ValidationError("geometry: emitter position must lie inside (-l, 0), got " + fmt(g.z_emitter));
  }
  const double s = std::sin(g.omega_k * g.z_emitter);
  return 4.0 * g.dipole_sq / (g.area * g.length) * s * s;
}

double vacuum_rabi(const GeometryParams& geom) { return std::sqrt(coupling_constant(geom) * geom.omega_k); }

CouplingProfile CouplingProfile::constant(const TimeGrid& grid) {
  return CouplingProfile(RealSignal(grid, std::vector<double>(grid.size(), 1.0)));
}

CouplingProfile CouplingProfile::decoupled(const TimeGrid& grid) { return CouplingProfile(RealSignal(grid)); }

CouplingProfile CouplingProfile::from_samples(RealSignal samples) {
  double peak = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i] < 0.0) {
      throw ValidationError("coupling profile sample " + std::to_string(i) + " is negative");
    }
    peak = std::max(peak, samples[i]);
  }
  if (peak != 0.0 && std::abs(peak - 1.0) > 1e-12) {
    throw ValidationError("coupling profile must be normalized to max g = 1, got " + fmt(peak));
  }
  return CouplingProfile(std::move(samples));
}

KernelTerms kernel_terms(const ModelParams& p, const ComplexSignal& pump, const CouplingProfile& coupling,
                         double t, double t_prime) {
  const double lag = t - t_prime;
  const complex pump_term =
      -0.25 * pump.at(t) * std::conj(pump.at(t_prime)) * std::exp(complex(0.0, -p.delta_p * lag));
  const complex cavity_term = -0.25 * coupling_strength(p) * coupling.at(t) * coupling.at(t_prime) *
                              std::exp(-cavity_rate(p) * lag);
  return {pump_term, cavity_term};
}

complex kernel_eval(const ModelParams& p, const ComplexSignal& pump, const CouplingProfile& coupling, double t,
                    double t_prime) {
  const double horizon = pump.grid().horizon();
  if (!(t_prime >= 0.0 && t_prime <= t && t <= horizon)) {
    throw std::invalid_argument("kernel_eval requires 0 <= t' <= t <= horizon");
  }
  return kernel_terms(p, pump, coupling, t, t_prime).total();
}

}  // namespace cqed
