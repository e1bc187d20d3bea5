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

#include "cqed/toolkit/run.hpp"

#include <cmath>
#include <future>
#include <numbers>

#include "cqed/dynamics.hpp"
#include "cqed/error.hpp"
#include "cqed/inverse.hpp"
#include "cqed/numerics.hpp"
#include "cqed/toolkit/io.hpp"

namespace cqed::toolkit {

namespace fs = std::filesystem;

namespace {

template <class F>
auto stage(const std::string& name, F&& body) -> decltype(body()) {
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

std::string num(double v) { return format_double(v); }

struct Split {
  std::vector<double> re, im;
};

Split split(std::span<const complex> z) {
  Split s{std::vector<double>(z.size()), std::vector<double>(z.size())};
  for (std::size_t i = 0; i < z.size(); ++i) {
    s.re[i] = z[i].real();
    s.im[i] = z[i].imag();
  }
  return s;
}

std::vector<double> times(const TimeGrid& grid) {
  std::vector<double> t(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) t[i] = grid.time(i);
  return t;
}

std::vector<double> intensity(std::span<const complex> z) {
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = std::norm(z[i]);
  return out;
}

CouplingProfile load_coupling(const RunConfig& c) {
  if (!c.coupling_file) return CouplingProfile::constant(c.grid);
  return stage("load_coupling", [&] {
    auto cols = read_sampled(*c.coupling_file, c.grid, 1, 1);
    return CouplingProfile::from_samples(RealSignal(c.grid, std::move(cols[0])));
  });
}

ComplexSignal load_drive(const RunConfig& c) {
  const PumpSpec& pump = *c.pump;
  return stage("load_pump", [&] {
    std::vector<complex> omega(c.grid.size());
    switch (pump.kind) {
      case PumpSpec::Kind::constant:
        std::fill(omega.begin(), omega.end(), complex(pump.amplitude, 0.0));
        break;
      case PumpSpec::Kind::gaussian:
        for (std::size_t i = 0; i < omega.size(); ++i) {
          const double x = (c.grid.time(i) - pump.center) / pump.width;
          omega[i] = pump.amplitude * std::exp(-0.5 * x * x);
        }
        break;
      case PumpSpec::Kind::sampled: {
        const auto cols = read_sampled(pump.file, c.grid, 1, 2);
        for (std::size_t i = 0; i < omega.size(); ++i) omega[i] = {cols[0][i], cols.size() > 1 ? cols[1][i] : 0.0};
        break;
      }
    }
    return ComplexSignal(c.grid, std::move(omega));
  });
}

TargetShape load_target(const RunConfig& c) {
  const TargetSpec& spec = *c.target;
  if (!spec.file) return TargetShape{spec.shape, spec.eta_target};
  return stage("load_target", [&] {
    const auto cols = read_sampled(*spec.file, c.grid, 1, 2);
    std::vector<complex> psi(c.grid.size());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = {cols[0][i], cols.size() > 1 ? cols[1][i] : 0.0};
    return TargetShape{SampledShape{ComplexSignal(c.grid, std::move(psi))}, spec.eta_target};
  });
}

void write_forward(const fs::path& path, const SimulationResult& r) {
  const TimeGrid& grid = r.c2.grid();
  const auto t = times(grid);
  const auto c1 = split(r.c1->values());
  const auto c2 = split(r.c2.values());
  const auto b = split(r.cavity->values());
  const auto psi = split(r.envelope->values());
  write_csv(path, {{"t", t},
                   {"re_c1", c1.re},
                   {"im_c1", c1.im},
                   {"re_c2", c2.re},
                   {"im_c2", c2.im},
                   {"re_b", b.re},
                   {"im_b", b.im},
                   {"re_psi", psi.re},
                   {"im_psi", psi.im},
                   {"eta", r.efficiency->values()}});
}

void write_pulse(const fs::path& path, const PulsePlan& plan) {
  const auto t = times(plan.f.grid());
  const auto f = split(plan.f.values());
  write_csv(path, {{"t", t},
                   {"Omega_p", plan.amplitude.values()},
                   {"phase", plan.phase.values()},
                   {"re_f", f.re},
                   {"im_f", f.im}});
}

double input_output_error(const SimulationResult& r, const ModelParams& p) {
  const auto psi = r.envelope->values();
  const auto b = r.cavity->values();
  double worst = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    worst = std::max(worst, std::abs(std::abs(psi[i]) - std::sqrt(p.gamma_rad) * std::abs(b[i])));
  }
  const double peak = numerics::max_abs(psi);
  return peak > 0.0 ? worst / peak : worst;
}

Summary header(const RunConfig& c) {
  return {{"mode", std::string(mode_name(c.mode))},
          {"horizon", num(c.grid.horizon())},
          {"steps", std::to_string(c.grid.steps())},
          {"rabi", num(c.model.rabi)},
          {"gamma_k", num(c.model.gamma_k)},
          {"gamma_rad", num(c.model.gamma_rad)},
          {"delta_k", num(c.model.delta_k)},
          {"delta_p", num(c.model.delta_p)}};
}

void add_report(Summary& s, const std::string& prefix, const RoundtripReport& r) {
  s.emplace_back(prefix + "eta_target", num(r.eta_target));
  s.emplace_back(prefix + "eta", num(r.eta_achieved));
  s.emplace_back(prefix + "fidelity", num(r.fidelity));
  s.emplace_back(prefix + "max_amplitude", num(r.max_amplitude));
  s.emplace_back(prefix + "drive_peaks", std::to_string(r.drive_peaks));
  s.emplace_back(prefix + "residual_phase_flatness", num(r.plan.residual_phase_flatness));
  s.emplace_back(prefix + "norm_residual", num(r.norm_residual));
  s.emplace_back(prefix + "pump_residual", num(r.pump_residual));
  s.emplace_back(prefix + "envelope_inversion_error", num(r.envelope_inversion_error));
  if (r.pump_route_difference) s.emplace_back(prefix + "pump_route_difference", num(*r.pump_route_difference));
  if (r.d_zero_crossing) s.emplace_back(prefix + "d_zero_crossing_t", num(r.target.grid().time(*r.d_zero_crossing)));
  if (r.bin_phase_difference) s.emplace_back(prefix + "bin_phase_difference", num(*r.bin_phase_difference));
}

void run_forward(const RunConfig& c, const fs::path& out, Summary& summary) {
  const CouplingProfile coupling = load_coupling(c);
  const ComplexSignal drive = load_drive(c);
  const SimulationResult r = stage("simulate_emission", [&] { return simulate_emission(c.model, drive, coupling, c.grid); });
  write_forward(out / "forward.csv", r);
  summary.emplace_back("eta", num((*r.efficiency)[c.grid.steps()]));
  summary.emplace_back("norm_residual", num(r.norm_residual));
  summary.emplace_back("max_abs_c2", num(numerics::max_abs(r.c2.values())));
  summary.emplace_back("input_output_error", num(input_output_error(r, c.model)));
}

void run_inverse(const RunConfig& c, const fs::path& out, Summary& summary) {
  const CouplingProfile coupling = load_coupling(c);
  const TargetShape shape = load_target(c);
  const ComplexSignal target = stage("make_target", [&] { return make_target(shape, c.model, c.grid); });
  stage("validate_target", [&] {
    const auto diags = validate_target(target, c.grid, c.model);
    if (!diags.empty()) {
      std::string msg;
      for (const auto& d : diags) msg += (msg.empty() ? "" : "; ") + d.field + ": " + d.message;
      throw ValidationError(msg);
    }
    return 0;
  });
  const ComplexSignal c2 = stage("c2_from_target", [&] { return c2_from_target(target, c.model, coupling, c.grid); });
  const ComplexSignal d = stage("d_from_c2", [&] { return d_from_c2(c2, coupling, c.model, c.grid); });
  const ComplexSignal f = stage("pump_from_dynamics", [&] { return pump_from_dynamics(d, c2, c.grid); });
  const PulsePlan plan = stage("pulse_plan", [&] { return pulse_plan(f, c.model); });
  const PumpOdeSolution ode = stage("pump_from_dynamics_ode", [&] { return pump_from_dynamics_ode(d, c2, c.grid); });

  write_pulse(out / "pulse.csv", plan);
  const auto t = times(c.grid);
  const auto tg = split(target.values());
  const auto c2s = split(c2.values());
  const auto ds = split(d.values());
  write_csv(out / "reconstruction.csv", {{"t", t},
                                         {"re_psi_target", tg.re},
                                         {"im_psi_target", tg.im},
                                         {"re_c2", c2s.re},
                                         {"im_c2", c2s.im},
                                         {"re_d", ds.re},
                                         {"im_d", ds.im}});

  const ComplexSignal rhs = pump_equation_rhs(f, c2, c.grid);
  const double d_peak = numerics::max_abs(d.values());
  summary.emplace_back("eta_target", num(shape.eta_target));
  summary.emplace_back("max_amplitude", num(plan.max_amplitude));
  summary.emplace_back("drive_peaks",
                       std::to_string(numerics::count_local_maxima(plan.amplitude.values(), kPeakProminence)));
  summary.emplace_back("residual_phase_flatness", num(plan.residual_phase_flatness));
  summary.emplace_back("pump_residual",
                       num(d_peak > 0.0 ? numerics::max_abs_diff(rhs.values(), d.values()) / d_peak : 0.0));
  const ComplexSignal reemitted = emission_envelope(c2, coupling, c.model, c.grid);
  summary.emplace_back("envelope_inversion_error", num(numerics::max_abs_diff(reemitted.values(), target.values())));
  summary.emplace_back("pump_route_difference", num(numerics::max_abs_diff(ode.f.values(), f.values())));
  if (ode.d_zero_crossing) summary.emplace_back("d_zero_crossing_t", num(c.grid.time(*ode.d_zero_crossing)));
}

void run_roundtrip(const RunConfig& c, const fs::path& out, Summary& summary) {
  const CouplingProfile coupling = load_coupling(c);
  const TargetShape shape = load_target(c);
  const RoundtripReport r = roundtrip(shape, c.model, coupling, c.grid);
  write_pulse(out / "pulse.csv", r.plan);
  write_forward(out / "forward.csv", r.simulation);
  add_report(summary, "", r);
  summary.emplace_back("input_output_error", num(input_output_error(r.simulation, c.model)));
}

void write_figure(const fs::path& path, const RoundtripReport& r) {
  const auto t = times(r.target.grid());
  write_csv(path, {{"t", t},
                   {"Omega_p", r.plan.amplitude.values()},
                   {"target_intensity", intensity(r.target.values())},
                   {"simulated_intensity", intensity(r.simulation.envelope->values())}});
}

void run_figures(const RunConfig& c, const fs::path& out, Summary& summary) {
  const CouplingProfile coupling = load_coupling(c);
  TargetShape a{c.target ? c.target->shape : DoubleGaussian{}, c.target ? c.target->eta_target : 0.9};
  TargetShape b = a;
  std::get<DoubleGaussian>(a.form).rel_phase = 0.0;
  std::get<DoubleGaussian>(b.form).rel_phase = std::numbers::pi;

  auto launch = [&](const TargetShape& shape) {
    return std::async(std::launch::async, [&c, &coupling, shape] { return roundtrip(shape, c.model, coupling, c.grid); });
  };
  auto fa = launch(a);
  auto fb = launch(b);
  const RoundtripReport ra = fa.get();
  const RoundtripReport rb = fb.get();
  write_figure(out / "fig5a.csv", ra);
  write_figure(out / "fig5b.csv", rb);
  add_report(summary, "fig5a.", ra);
  add_report(summary, "fig5b.", rb);
}

int report(std::ostream& diag, const std::exception& e, int code) {
  diag << "error: " << e.what() << '\n';
  return code;
}

template <class F>
int guarded(std::ostream& diag, F&& body) {
  try {
    body();
    return kExitOk;
  } catch (const StageError& e) {
    diag << "error: stage " << e.stage() << ": " << (e.what() + e.stage().size() + 2) << '\n';
    return e.numerical() ? kExitNumerical : kExitValidation;
  } catch (const NumericalError& e) {
    return report(diag, e, kExitNumerical);
  } catch (const ValidationError& e) {
    return report(diag, e, kExitValidation);
  } catch (const std::exception& e) {
    return report(diag, e, kExitValidation);
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& diag) {
  return guarded(diag, [&] {
    const fs::path out = config.output.dir;
    fs::create_directories(out);
    Summary summary = header(config);
    switch (config.mode) {
      case Mode::forward: run_forward(config, out, summary); break;
      case Mode::inverse: run_inverse(config, out, summary); break;
      case Mode::roundtrip: run_roundtrip(config, out, summary); break;
      case Mode::figures: run_figures(config, out, summary); break;
    }
    if (config.output.summary) write_summary(out / "summary.txt", summary);
  });
}

int validate(const RunConfig& config, std::ostream& diag) {
  return guarded(diag, [&] {
    const CouplingProfile coupling = load_coupling(config);
    if (config.mode == Mode::forward) {
      load_drive(config);
      return;
    }
    std::vector<TargetShape> shapes;
    if (config.mode == Mode::figures) {
      TargetShape a{config.target ? config.target->shape : DoubleGaussian{},
                    config.target ? config.target->eta_target : 0.9};
      shapes.push_back(a);
      std::get<DoubleGaussian>(a.form).rel_phase = std::numbers::pi;
      shapes.push_back(a);
    } else {
      shapes.push_back(load_target(config));
    }
    for (const auto& shape : shapes) {
      const ComplexSignal target = stage("make_target", [&] { return make_target(shape, config.model, config.grid); });
      stage("validate_target", [&] {
        const auto diags = validate_target(target, config.grid, config.model);
        if (!diags.empty()) {
          std::string msg;
          for (const auto& d : diags) msg += (msg.empty() ? "" : "; ") + d.field + ": " + d.message;
          throw ValidationError(msg);
        }
        return 0;
      });
      stage("c2_from_target", [&] { return c2_from_target(target, config.model, coupling, config.grid); });
    }
  });
}

}  // namespace cqed::toolkit
