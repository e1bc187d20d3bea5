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

#include "cqed/dynamics.hpp"

#include <array>
#include <cmath>

#include "cqed/numerics.hpp"

namespace cqed {

namespace {

constexpr complex kI{0.0, 1.0};

void check_forward_inputs(const ComplexSignal& drive, const CouplingProfile& coupling, const TimeGrid& grid) {
  if (grid.steps() < kMinForwardSteps) {
    throw ValidationError("forward solves need at least " + std::to_string(kMinForwardSteps) + " steps");
  }
  require_same_grid(drive.grid(), grid, "drive");
  require_same_grid(coupling.grid(), grid, "coupling");
}

void check_step(const complex& v, std::size_t step, const char* what) {
  if (!is_finite(v)) {
    throw NumericalError(std::string("non-finite ") + what + " during time marching", step);
  }
}

}  // namespace

ComplexSignal pump_factor(const ComplexSignal& drive, const ModelParams& p) {
  const TimeGrid& grid = drive.grid();
  std::vector<complex> f(grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = 0.5 * kI * drive[i] * std::exp(complex(0.0, -p.delta_p * grid.time(i)));
  }
  return ComplexSignal(grid, std::move(f));
}

std::vector<complex> exp_convolution(std::span<const complex> h, complex rate, double dt) {
  const std::size_t n = h.size();
  std::vector<complex> out(n, complex{});
  if (n < 2) return out;
  if (n < 4) {
    const complex decay = std::exp(-rate * dt);
    for (std::size_t j = 0; j + 1 < n; ++j) out[j + 1] = decay * out[j] + 0.5 * dt * (decay * h[j] + h[j + 1]);
    return out;
  }
  // e^{-rate k dt} for the lags k = -2..3 that the four-point stencils touch.
  std::array<complex, 6> w{};
  for (int k = -2; k <= 3; ++k) w[static_cast<std::size_t>(k + 2)] = std::exp(-rate * (k * dt));
  auto weight = [&](std::size_t right, std::size_t j) {
    return w[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(right) - static_cast<std::ptrdiff_t>(j) + 2)];
  };
  const double s = dt / 24.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const std::size_t r = j + 1;
    complex piece;
    if (j == 0) {
      piece = s * (9.0 * weight(r, 0) * h[0] + 19.0 * weight(r, 1) * h[1] - 5.0 * weight(r, 2) * h[2] +
                   weight(r, 3) * h[3]);
    } else if (j + 2 == n) {
      piece = s * (weight(r, n - 4) * h[n - 4] - 5.0 * weight(r, n - 3) * h[n - 3] +
                   19.0 * weight(r, n - 2) * h[n - 2] + 9.0 * weight(r, n - 1) * h[n - 1]);
    } else {
      piece = s * (-weight(r, j - 1) * h[j - 1] + 13.0 * weight(r, j) * h[j] + 13.0 * weight(r, j + 1) * h[j + 1] -
                   weight(r, j + 2) * h[j + 2]);
    }
    out[r] = w[3] * out[j] + piece;
  }
  return out;
}

SimulationResult solve_volterra(const ModelParams& p, const ComplexSignal& drive, const CouplingProfile& coupling,
                                const TimeGrid& grid) {
  check_forward_inputs(drive, coupling, grid);
  const std::size_t n_steps = grid.steps();
  const double dt = grid.dt();
  const ComplexSignal f = pump_factor(drive, p);
  const complex kappa = coupling_strength(p);
  const complex rate = cavity_rate(p);

  std::vector<complex> memory(n_steps + 1);
  for (std::size_t k = 0; k <= n_steps; ++k) memory[k] = std::exp(-rate * (static_cast<double>(k) * dt));

  std::vector<complex> y(n_steps + 1, complex{});
  std::vector<complex> gy(n_steps + 1, complex{});  // g_j y_j, trapezoid weight folded in at j = 0
  // Pump term of K is separable, -f(t) conj(f(t')); its history sum is a running total.
  complex pump_history{};
  complex rhs = f[0];

  for (std::size_t n = 0; n < n_steps; ++n) {
    const std::size_t m = n + 1;
    const double wn = (n == 0) ? 0.5 : 1.0;
    pump_history += wn * std::conj(f[n]) * y[n];
    gy[n] = wn * coupling[n] * y[n];

    complex cavity_history{};
    for (std::size_t j = 0; j <= n; ++j) cavity_history += gy[j] * memory[m - j];

    const complex history = -f[m] * pump_history - 0.25 * kappa * coupling[m] * cavity_history;
    const complex k_diag = -std::norm(f[m]) - 0.25 * kappa * coupling[m] * coupling[m];

    const complex predicted = y[n] + dt * rhs;
    const complex rhs_predicted = f[m] + dt * (history + 0.5 * k_diag * predicted);
    y[m] = y[n] + 0.5 * dt * (rhs + rhs_predicted);
    rhs = f[m] + dt * (history + 0.5 * k_diag * y[m]);
    check_step(y[m], m, "C2");
  }

  SimulationResult result{ComplexSignal(grid, std::move(y))};

  // Recover C1 and B by quadrature for the probability balance.
  std::vector<complex> transfer(grid.size());
  std::vector<complex> source(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    transfer[i] = std::conj(f[i]) * result.c2[i];
    source[i] = coupling[i] * result.c2[i];
  }
  const auto depleted = numerics::cumulative_integral<complex>(transfer, dt);
  const auto conv = exp_convolution(source, rate, dt);
  const complex half_root = 0.5 * std::sqrt(kappa);
  std::vector<complex> c1(grid.size()), cavity(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    c1[i] = 1.0 - depleted[i];
    cavity[i] = half_root * conv[i];
  }
  SimulationResult full{result.c2, ComplexSignal(grid, std::move(c1)), ComplexSignal(grid, std::move(cavity))};
  result.norm_residual = norm_residual(full, p, grid);
  return result;
}

SimulationResult solve_local(const ModelParams& p, const ComplexSignal& drive, const CouplingProfile& coupling,
                             const TimeGrid& grid) {
  check_forward_inputs(drive, coupling, grid);
  const std::size_t n_steps = grid.steps();
  const double dt = grid.dt();
  const complex half_root = 0.5 * std::sqrt(coupling_strength(p));
  const complex rate = cavity_rate(p);
  const auto drive_values = drive.values();
  const auto g_values = coupling.samples().values();

  struct State {
    complex c1, c2, b;
  };
  auto rhs = [&](const State& s, complex f, double g) {
    return State{-std::conj(f) * s.c2, f * s.c1 - half_root * g * s.b, -rate * s.b + half_root * g * s.c2};
  };
  auto axpy = [](const State& s, double h, const State& k) {
    return State{s.c1 + h * k.c1, s.c2 + h * k.c2, s.b + h * k.b};
  };
  auto factor = [&](complex omega, double t) { return 0.5 * kI * omega * std::exp(complex(0.0, -p.delta_p * t)); };

  std::vector<complex> c1(grid.size()), c2(grid.size()), b(grid.size());
  State s{1.0, 0.0, 0.0};
  c1[0] = s.c1;
  for (std::size_t n = 0; n < n_steps; ++n) {
    const double t = grid.time(n);
    const double t_mid = t + 0.5 * dt;
    const complex f0 = factor(drive_values[n], t);
    const complex fm = factor(numerics::midpoint(drive_values, n), t_mid);
    const complex f1 = factor(drive_values[n + 1], grid.time(n + 1));
    const double g0 = g_values[n];
    const double gm = numerics::midpoint(g_values, n);
    const double g1 = g_values[n + 1];

    const State k1 = rhs(s, f0, g0);
    const State k2 = rhs(axpy(s, 0.5 * dt, k1), fm, gm);
    const State k3 = rhs(axpy(s, 0.5 * dt, k2), fm, gm);
    const State k4 = rhs(axpy(s, dt, k3), f1, g1);
    const double w = dt / 6.0;
    s = State{s.c1 + w * (k1.c1 + 2.0 * k2.c1 + 2.0 * k3.c1 + k4.c1),
              s.c2 + w * (k1.c2 + 2.0 * k2.c2 + 2.0 * k3.c2 + k4.c2),
              s.b + w * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b)};
    check_step(s.c1, n + 1, "C1");
    check_step(s.c2, n + 1, "C2");
    check_step(s.b, n + 1, "B");
    c1[n + 1] = s.c1;
    c2[n + 1] = s.c2;
    b[n + 1] = s.b;
  }

  SimulationResult result{ComplexSignal(grid, std::move(c2)), ComplexSignal(grid, std::move(c1)),
                          ComplexSignal(grid, std::move(b))};
  result.norm_residual = norm_residual(result, p, grid);
  return result;
}

ComplexSignal emission_envelope(const ComplexSignal& c2, const CouplingProfile& coupling, const ModelParams& p,
                                const TimeGrid& grid) {
  require_same_grid(c2.grid(), grid, "C2");
  require_same_grid(coupling.grid(), grid, "coupling");
  std::vector<complex> h(grid.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    h[i] = std::conj(c2[i]) * coupling[i] * std::exp(complex(0.0, -p.delta_k * grid.time(i)));
  }
  auto psi = exp_convolution(h, complex(0.5 * p.gamma_k, 0.0), grid.dt());
  const complex prefactor = 0.5 * std::sqrt(coupling_strength(p)) * std::sqrt(p.gamma_rad);
  for (auto& v : psi) v *= prefactor;
  return ComplexSignal(grid, std::move(psi));
}

RealSignal efficiency_from_cavity(const ComplexSignal& cavity, const ModelParams& p) {
  std::vector<double> intensity(cavity.size());
  for (std::size_t i = 0; i < intensity.size(); ++i) intensity[i] = std::norm(cavity[i]);
  auto eta = numerics::cumulative_integral_nonneg(intensity, cavity.grid().dt());
  for (auto& v : eta) v *= p.gamma_rad;
  return RealSignal(cavity.grid(), std::move(eta));
}

RealSignal efficiency_from_envelope(const ComplexSignal& envelope) {
  std::vector<double> intensity(envelope.size());
  for (std::size_t i = 0; i < intensity.size(); ++i) intensity[i] = std::norm(envelope[i]);
  return RealSignal(envelope.grid(), numerics::cumulative_integral_nonneg(intensity, envelope.grid().dt()));
}

RealSignal efficiency_curve(const SimulationResult& result, const ModelParams& p, const TimeGrid& grid) {
  if (result.cavity) {
    require_same_grid(result.cavity->grid(), grid, "cavity amplitude");
    return efficiency_from_cavity(*result.cavity, p);
  }
  if (result.envelope) {
    require_same_grid(result.envelope->grid(), grid, "envelope");
    return efficiency_from_envelope(*result.envelope);
  }
  throw ValidationError("efficiency_curve needs a cavity amplitude or an envelope");
}

double norm_residual(const SimulationResult& result, const ModelParams& p, const TimeGrid& grid) {
  if (!result.c1 || !result.cavity) {
    throw ValidationError("norm_residual needs C1 and the cavity amplitude");
  }
  require_same_grid(result.c2.grid(), grid, "C2");
  std::vector<double> cavity_sq(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) cavity_sq[i] = std::norm((*result.cavity)[i]);
  const auto leaked = numerics::cumulative_integral_nonneg(cavity_sq, grid.dt());
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double total =
        std::norm((*result.c1)[i]) + std::norm(result.c2[i]) + cavity_sq[i] + p.gamma_k * leaked[i];
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return worst;
}

SimulationResult simulate_emission(const ModelParams& p, const ComplexSignal& drive,
                                   const CouplingProfile& coupling, const TimeGrid& grid) {
  SimulationResult result = solve_local(p, drive, coupling, grid);
  result.envelope = emission_envelope(result.c2, coupling, p, grid);
  result.efficiency = efficiency_curve(result, p, grid);
  return result;
}

}  // namespace cqed
