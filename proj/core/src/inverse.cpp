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

#include "cqed/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cqed/numerics.hpp"
#include "cqed/spectrum.hpp"

namespace cqed {

namespace {

constexpr complex kI{0.0, 1.0};

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

ComplexSignal resample(const ComplexSignal& source, const TimeGrid& grid) {
  if (source.grid() == grid) return source;
  const TimeGrid& sg = source.grid();
  if (sg.horizon() < grid.horizon() * (1.0 - 1e-12)) {
    throw ValidationError("sampled target covers [0, " + fmt(sg.horizon()) + "] but the grid needs [0, " +
                          fmt(grid.horizon()) + "]");
  }
  std::vector<double> ts(sg.size()), re(sg.size()), im(sg.size());
  for (std::size_t i = 0; i < sg.size(); ++i) {
    ts[i] = sg.time(i);
    re[i] = source[i].real();
    im[i] = source[i].imag();
  }
  std::vector<complex> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.time(i);
    out[i] = {numerics::linear_interpolate(ts, re, t), numerics::linear_interpolate(ts, im, t)};
  }
  return ComplexSignal(grid, std::move(out));
}

double energy(std::span<const complex> v, double dt) {
  std::vector<double> intensity(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) intensity[i] = std::norm(v[i]);
  return numerics::cumulative_integral_nonneg(intensity, dt).back();
}

// Returns an empty string when the target decays at both ends.
std::string boundary_problem(const ComplexSignal& target) {
  const auto values = target.values();
  const double peak = numerics::max_abs(values);
  if (peak == 0.0) return "target is identically zero";
  const auto deriv = numerics::centered_derivative(values, target.grid().dt());
  const double limit = kBoundaryDecay * peak;
  const std::size_t last = values.size() - 1;
  std::ostringstream os;
  if (std::abs(values[0]) > limit || std::abs(deriv[0]) > limit) {
    os << "target does not decay at tau = 0 (|psi|/max = " << std::abs(values[0]) / peak
       << ", |psi'|/max = " << std::abs(deriv[0]) / peak << ", limit " << kBoundaryDecay << ")";
  }
  if (std::abs(values[last]) > limit || std::abs(deriv[last]) > limit) {
    if (os.tellp() > 0) os << "; ";
    os << "target does not decay at tau = T (|psi|/max = " << std::abs(values[last]) / peak
       << ", |psi'|/max = " << std::abs(deriv[last]) / peak << ", limit " << kBoundaryDecay << ")";
  }
  return os.str();
}

// Does the segment a -> b pass through (or within half its own length of) the origin?
bool crosses_zero(complex a, complex b) {
  const complex delta = b - a;
  const double len2 = std::norm(delta);
  if (len2 == 0.0) return std::abs(a) == 0.0;
  const double u = std::clamp(-(std::conj(delta) * a).real() / len2, 0.0, 1.0);
  if (u <= 0.0 || u >= 1.0) return false;
  return std::abs(a + u * delta) <= 0.5 * std::sqrt(len2);
}

template <class F>
auto run_stage(const std::string& name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const NumericalError& e) {
    throw StageError(name, e.what(), true);
  } catch (const ValidationError& e) {
    throw StageError(name, e.what(), false);
  }
}

}  // namespace

ComplexSignal make_target(const TargetShape& shape, const ModelParams& p, const TimeGrid& grid) {
  const double ceiling = p.gamma_rad / p.gamma_k;
  if (!(shape.eta_target > 0.0) || shape.eta_target > ceiling * (1.0 + 1e-12)) {
    throw ValidationError("eta_target must lie in (0, gamma_rad/gamma_k = " + fmt(ceiling) + "], got " +
                          fmt(shape.eta_target));
  }

  ComplexSignal raw = std::visit(
      [&](const auto& form) -> ComplexSignal {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, DoubleGaussian>) {
          if (!(form.width > 0.0)) throw ValidationError("target width must be positive");
          if (form.amp1 < 0.0 || form.amp2 < 0.0 || form.amp1 + form.amp2 == 0.0) {
            throw ValidationError("target bin weights must be >= 0 and not both zero");
          }
          if (form.amp1 > 0.0 && form.amp2 > 0.0 && !(form.center1 < form.center2)) {
            throw ValidationError("target bin centers must satisfy center1 < center2");
          }
          const double denom = 4.0 * form.width * form.width;
          const complex second = form.amp2 * std::exp(complex(0.0, form.rel_phase));
          std::vector<complex> v(grid.size());
          for (std::size_t i = 0; i < v.size(); ++i) {
            const double t = grid.time(i);
            const double a = t - form.center1;
            const double b = t - form.center2;
            v[i] = form.amp1 * std::exp(-a * a / denom) + second * std::exp(-b * b / denom);
          }
          return ComplexSignal(grid, std::move(v));
        } else {
          return resample(form.values, grid);
        }
      },
      shape.form);

  const double e = energy(raw.values(), grid.dt());
  if (!(e > 0.0)) throw ValidationError("target is identically zero");
  const double scale = std::sqrt(shape.eta_target / e);
  std::vector<complex> v(raw.begin(), raw.end());
  for (auto& x : v) x *= scale;
  ComplexSignal target(grid, std::move(v));

  if (auto problem = boundary_problem(target); !problem.empty()) {
    throw ValidationError(problem + ": bins too close to the grid ends");
  }
  return target;
}

std::vector<Diagnostic> validate_target(const ComplexSignal& target, const TimeGrid& grid, const ModelParams& p,
                                        double bandwidth_factor) {
  std::vector<Diagnostic> out;
  if (!(target.grid() == grid)) {
    out.push_back({"grid", "target is not sampled on the working grid"});
    return out;
  }
  if (auto problem = boundary_problem(target); !problem.empty()) out.push_back({"boundary", problem});

  const Spectrum s = fourier_transform(target.values(), grid.dt());
  const double limit = bandwidth_factor * p.gamma_k;
  const double fraction = spectral_fraction_within(s, limit);
  if (fraction < 0.99) {
    out.push_back({"bandwidth", "only " + fmt(100.0 * fraction) + "% of the spectral energy lies within |omega| <= " +
                                    fmt(limit) + "; the peaks are sharper than the cavity can emit"});
  }
  if (grid.horizon() * p.gamma_k < 50.0) {
    out.push_back({"horizon", "Gamma_k T = " + fmt(grid.horizon() * p.gamma_k) + " < 50"});
  }
  const double e = energy(target.values(), grid.dt());
  if (e > p.gamma_rad / p.gamma_k * (1.0 + 1e-9)) {
    out.push_back({"efficiency", "target energy " + fmt(e) + " exceeds gamma_rad/gamma_k = " +
                                     fmt(p.gamma_rad / p.gamma_k)});
  }
  return out;
}

ComplexSignal c2_from_target(const ComplexSignal& target, const ModelParams& p, const CouplingProfile& coupling,
                             const TimeGrid& grid) {
  require_same_grid(target.grid(), grid, "target");
  require_same_grid(coupling.grid(), grid, "coupling");
  const complex root_kappa = std::sqrt(coupling_strength(p));
  if (std::abs(root_kappa) == 0.0 || !(p.gamma_rad > 0.0)) {
    throw ValidationError("emitter-cavity coupling or radiative loss is zero; no target is reachable");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(coupling[i]) < 1e-6) {
      throw ValidationError("coupling g(t) < 1e-6 at t = " + fmt(grid.time(i)) + ": singular reconstruction");
    }
  }
  const auto deriv = numerics::centered_derivative(target.values(), grid.dt());
  const complex scale = 2.0 / (std::conj(root_kappa) * std::sqrt(p.gamma_rad));
  std::vector<complex> c2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.time(i);
    const complex rotated = std::exp(complex(0.0, -p.delta_k * t));
    c2[i] = scale * rotated * (std::conj(deriv[i]) + 0.5 * p.gamma_k * std::conj(target[i])) / coupling[i];
    if (std::abs(c2[i]) > 1.0) {
      throw ValidationError("reconstructed |C2| = " + fmt(std::abs(c2[i])) + " > 1 at t = " + fmt(t) +
                            ": target unreachable at these parameters");
    }
  }
  return ComplexSignal(grid, std::move(c2));
}

ComplexSignal d_from_c2(const ComplexSignal& c2, const CouplingProfile& coupling, const ModelParams& p,
                        const TimeGrid& grid, MemoryRoute route) {
  require_same_grid(c2.grid(), grid, "C2");
  require_same_grid(coupling.grid(), grid, "coupling");
  const std::size_t n = grid.size();
  const double dt = grid.dt();
  const complex rate = cavity_rate(p);
  const complex kappa = coupling_strength(p);

  std::vector<complex> source(n);
  for (std::size_t i = 0; i < n; ++i) source[i] = c2[i] * coupling[i];

  // memory[i] = int_0^{t_i} e^{-rate (t_i - t')} g C2 dt'
  std::vector<complex> memory(n, complex{});
  if (route == MemoryRoute::quadrature) {
    std::vector<complex> decay(n);
    for (std::size_t k = 0; k < n; ++k) decay[k] = std::exp(-rate * (static_cast<double>(k) * dt));
    std::vector<complex> u(n);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) u[j] = decay[i - j] * source[j];
      const std::span<const complex> window(u.data(), i + 1);
      complex acc{};
      for (std::size_t j = 0; j < i; ++j) acc += numerics::interval_integral(window, j, dt);
      memory[i] = acc;
    }
  } else {
    const std::span<const complex> src(source);
    complex m{};
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const complex s0 = src[i];
      const complex sm = numerics::midpoint(src, i);
      const complex s1 = src[i + 1];
      const complex k1 = -rate * m + s0;
      const complex k2 = -rate * (m + 0.5 * dt * k1) + sm;
      const complex k3 = -rate * (m + 0.5 * dt * k2) + sm;
      const complex k4 = -rate * (m + dt * k3) + s1;
      m += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      memory[i + 1] = m;
    }
  }

  const auto deriv = numerics::centered_derivative(c2.values(), dt);
  std::vector<complex> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = deriv[i] + 0.25 * kappa * coupling[i] * memory[i];
  return ComplexSignal(grid, std::move(d));
}

ComplexSignal pump_from_dynamics(const ComplexSignal& d, const ComplexSignal& c2, const TimeGrid& grid) {
  require_same_grid(d.grid(), grid, "D");
  require_same_grid(c2.grid(), grid, "C2");
  const double dt = grid.dt();
  std::vector<complex> f(grid.size());
  f[0] = d[0];
  complex depleted{};  // int_0^{t_n} conj(f) C2
  complex previous_denominator{1.0, 0.0};

  auto divide = [&](complex numerator, complex denominator, std::size_t step) {
    if (std::abs(denominator) < kSingularDenominator || crosses_zero(previous_denominator, denominator)) {
      throw NumericalError("singular pulse: 1 - int conj(f) C2 = " + fmt(std::abs(denominator)) + " at t = " +
                               fmt(grid.time(step)) + "; the target is unreachable without a diverging drive",
                           step);
    }
    return numerator / denominator;
  };

  for (std::size_t n = 0; n < grid.steps(); ++n) {
    const std::size_t m = n + 1;
    const complex left = std::conj(f[n]) * c2[n];
    const complex f_predicted = divide(d[m], 1.0 - (depleted + dt * left), m);
    const complex corrected = depleted + 0.5 * dt * (left + std::conj(f_predicted) * c2[m]);
    const complex denominator = 1.0 - corrected;
    f[m] = divide(d[m], denominator, m);
    previous_denominator = denominator;
    depleted += 0.5 * dt * (left + std::conj(f[m]) * c2[m]);
    if (!is_finite(f[m])) throw NumericalError("non-finite drive", m);
  }
  return ComplexSignal(grid, std::move(f));
}

PumpOdeSolution pump_from_dynamics_ode(const ComplexSignal& d, const ComplexSignal& c2, const TimeGrid& grid) {
  require_same_grid(d.grid(), grid, "D");
  require_same_grid(c2.grid(), grid, "C2");
  const double dt = grid.dt();
  const auto dv = d.values();
  const auto cv = c2.values();

  // f = h D turns D f' - D' f - |f|^2 f C2 = 0 into h' = |h|^2 h conj(D) C2,
  // which stays regular where D vanishes. h(0) = 1 is f(0) = D(0).
  auto rhs = [](complex h, complex dval, complex c) { return std::norm(h) * h * std::conj(dval) * c; };

  std::vector<complex> f(grid.size());
  std::optional<std::size_t> crossing;
  complex h{1.0, 0.0};
  f[0] = dv[0];
  for (std::size_t n = 0; n < grid.steps(); ++n) {
    const std::size_t m = n + 1;
    if (!crossing && crosses_zero(dv[n], dv[m])) crossing = m;
    const complex d_mid = numerics::midpoint(dv, n);
    const complex c_mid = numerics::midpoint(cv, n);
    const complex k1 = rhs(h, dv[n], cv[n]);
    const complex k2 = rhs(h + 0.5 * dt * k1, d_mid, c_mid);
    const complex k3 = rhs(h + 0.5 * dt * k2, d_mid, c_mid);
    const complex k4 = rhs(h + dt * k3, dv[m], cv[m]);
    h += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    f[m] = h * dv[m];
    if (!is_finite(f[m]) || std::abs(h) > 1.0 / kSingularDenominator) {
      throw NumericalError("singular pulse in the ODE route: |f / D| = " + fmt(std::abs(h)) + " at t = " +
                               fmt(grid.time(m)),
                           m);
    }
  }
  return {ComplexSignal(grid, std::move(f)), crossing};
}

ComplexSignal pump_equation_rhs(const ComplexSignal& f, const ComplexSignal& c2, const TimeGrid& grid) {
  require_same_grid(f.grid(), grid, "f");
  require_same_grid(c2.grid(), grid, "C2");
  std::vector<complex> integrand(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) integrand[i] = std::conj(f[i]) * c2[i];
  const auto depleted = numerics::cumulative_trapezoid<complex>(integrand, grid.dt());
  std::vector<complex> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f[i] * (1.0 - depleted[i]);
  return ComplexSignal(grid, std::move(out));
}

ComplexSignal PulsePlan::drive(const ModelParams& p) const {
  const TimeGrid& grid = f.grid();
  std::vector<complex> omega(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    omega[i] = -2.0 * kI * f[i] * std::exp(complex(0.0, p.delta_p * grid.time(i)));
  }
  return ComplexSignal(grid, std::move(omega));
}

PulsePlan pulse_plan(const ComplexSignal& f, const ModelParams& p) {
  const TimeGrid& grid = f.grid();
  std::vector<double> amplitude(grid.size()), phase(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    amplitude[i] = 2.0 * std::abs(f[i]);
    phase[i] = numerics::wrap_phase(std::arg(f[i]) - 0.5 * std::numbers::pi + p.delta_p * grid.time(i));
  }
  const auto peak = std::max_element(amplitude.begin(), amplitude.end());
  const double max_amplitude = *peak;
  double flatness = 0.0;
  if (max_amplitude > 0.0) {
    const double reference = phase[static_cast<std::size_t>(peak - amplitude.begin())];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (amplitude[i] >= 1e-3 * max_amplitude) {
        flatness = std::max(flatness, std::abs(numerics::wrap_phase(phase[i] - reference)));
      }
    }
  }
  return PulsePlan{f, RealSignal(grid, std::move(amplitude)), RealSignal(grid, std::move(phase)), max_amplitude,
                   flatness};
}

double fidelity(const ComplexSignal& a, const ComplexSignal& b) {
  require_same_grid(a.grid(), b.grid(), "fidelity operands");
  const double dt = a.grid().dt();
  const complex overlap = numerics::inner_product(a.values(), b.values(), dt);
  const double na = numerics::inner_product(a.values(), a.values(), dt).real();
  const double nb = numerics::inner_product(b.values(), b.values(), dt).real();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::min(1.0, std::norm(overlap) / (na * nb));
}

RoundtripReport roundtrip(const TargetShape& shape, const ModelParams& p, const CouplingProfile& coupling,
                          const TimeGrid& grid, const RoundtripOptions& options) {
  run_stage("validate_params", [&] {
    const auto diags = validate_params(p);
    if (!diags.empty()) throw ValidationError(diags.front().field + " " + diags.front().message);
    return 0;
  });
  ComplexSignal target = run_stage("make_target", [&] { return make_target(shape, p, grid); });
  if (options.validate) {
    run_stage("validate_target", [&] {
      const auto diags = validate_target(target, grid, p);
      if (!diags.empty()) {
        std::string msg;
        for (const auto& dg : diags) msg += (msg.empty() ? "" : "; ") + dg.field + ": " + dg.message;
        throw ValidationError(msg);
      }
      return 0;
    });
  }
  ComplexSignal c2 = run_stage("c2_from_target", [&] { return c2_from_target(target, p, coupling, grid); });
  ComplexSignal d = run_stage("d_from_c2", [&] { return d_from_c2(c2, coupling, p, grid); });
  ComplexSignal f = run_stage("pump_from_dynamics", [&] { return pump_from_dynamics(d, c2, grid); });
  PulsePlan plan = run_stage("pulse_plan", [&] { return pulse_plan(f, p); });
  SimulationResult sim = run_stage("solve_local", [&] { return solve_local(p, plan.drive(p), coupling, grid); });
  sim.envelope = run_stage("emission_envelope", [&] { return emission_envelope(sim.c2, coupling, p, grid); });
  sim.efficiency = run_stage("efficiency_curve", [&] { return efficiency_curve(sim, p, grid); });

  RoundtripReport report{target, c2, d, plan, sim};
  report.fidelity = fidelity(target, *sim.envelope);
  report.eta_target = shape.eta_target;
  report.eta_achieved = (*sim.efficiency)[grid.steps()];
  report.max_amplitude = plan.max_amplitude;
  report.drive_peaks = numerics::count_local_maxima(plan.amplitude.values(), kPeakProminence);
  report.norm_residual = sim.norm_residual;

  const ComplexSignal reemitted = emission_envelope(c2, coupling, p, grid);
  report.envelope_inversion_error = numerics::max_abs_diff(reemitted.values(), target.values());
  const ComplexSignal rhs = pump_equation_rhs(f, c2, grid);
  const double d_peak = numerics::max_abs(d.values());
  report.pump_residual = d_peak > 0.0 ? numerics::max_abs_diff(rhs.values(), d.values()) / d_peak : 0.0;

  if (options.cross_check_ode) {
    const PumpOdeSolution ode = run_stage("pump_from_dynamics_ode", [&] { return pump_from_dynamics_ode(d, c2, grid); });
    report.d_zero_crossing = ode.d_zero_crossing;
    report.pump_route_difference = numerics::max_abs_diff(ode.f.values(), f.values());
  }

  if (const auto* dg = std::get_if<DoubleGaussian>(&shape.form)) {
    const auto& env = *sim.envelope;
    report.bin_phase_difference = numerics::wrap_phase(std::arg(env.at(dg->center2)) - std::arg(env.at(dg->center1)));
  }
  return report;
}

}  // namespace cqed
