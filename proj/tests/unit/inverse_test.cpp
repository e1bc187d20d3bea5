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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cqed/error.hpp"
#include "cqed/inverse.hpp"
#include "cqed/numerics.hpp"

namespace cqed {
namespace {

const TimeGrid kGrid(200.0, 8192);

double energy(const ComplexSignal& s) {
  std::vector<double> v(s.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::norm(s[i]);
  return numerics::cumulative_integral_nonneg(v, s.grid().dt()).back();
}

TargetShape single(double center, double width, double eta) {
  DoubleGaussian g;
  g.amp2 = 0.0;
  g.center1 = center;
  g.width = width;
  return TargetShape{g, eta};
}

TEST(Target, Normalization) {
  const ModelParams p;
  EXPECT_NEAR(energy(make_target(TargetShape{}, p, kGrid)), 0.9, 1e-12);
  EXPECT_NEAR(energy(make_target(single(100.0, 8.0, 0.5), p, kGrid)), 0.5, 1e-12);
}

TEST(Target, PiPhaseBinsOverlapNegatively) {
  DoubleGaussian g;
  g.rel_phase = std::numbers::pi;
  g.center2 = 100.0;  // overlapping bins
  g.width = 8.0;
  const auto psi = make_target(TargetShape{g, 0.9}, ModelParams{}, kGrid);
  EXPECT_LT(psi.at(80.0).real() * psi.at(100.0).real(), 0.0);
}

TEST(Target, Rejections) {
  ModelParams p;
  p.gamma_rad = 0.8;
  EXPECT_THROW(make_target(TargetShape{DoubleGaussian{}, 0.9}, p, kGrid), ValidationError);
  EXPECT_THROW(make_target(single(195.0, 8.0, 0.5), ModelParams{}, kGrid), ValidationError);
  EXPECT_THROW(make_target(single(100.0, -1.0, 0.5), ModelParams{}, kGrid), ValidationError);
}

TEST(Target, ValidationDiagnostics) {
  const ModelParams p;
  EXPECT_TRUE(validate_target(make_target(TargetShape{}, p, kGrid), kGrid, p).empty());

  const auto sharp = make_target(single(100.0, 0.1, 0.5), p, kGrid);
  const auto d = validate_target(sharp, kGrid, p);
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d.front().field, "bandwidth");

  std::vector<complex> edge(kGrid.size());
  for (std::size_t i = 0; i < edge.size(); ++i) edge[i] = std::exp(-std::pow((kGrid.time(i) - 200.0) / 10.0, 2));
  const auto e = validate_target(ComplexSignal(kGrid, edge), kGrid, p);
  ASSERT_FALSE(e.empty());
  EXPECT_EQ(e.front().field, "boundary");

  const TimeGrid short_grid(40.0, 4096);
  const auto s = validate_target(make_target(single(20.0, 2.0, 0.5), p, short_grid), short_grid, p);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.front().field, "horizon");
}

TEST(C2FromTarget, ExtremumAndZero) {
  const ModelParams p;
  const auto g = CouplingProfile::constant(kGrid);
  EXPECT_EQ(numerics::max_abs(c2_from_target(ComplexSignal(kGrid), p, g, kGrid).values()), 0.0);

  const auto psi = make_target(single(100.0, 8.0, 0.8), p, kGrid);
  const auto c2 = c2_from_target(psi, p, g, kGrid);
  const std::size_t peak = 4096;  // t = 100
  const double expected = 2.0 / (2.0 * 1.0) * 0.5 * psi[peak].real();
  EXPECT_NEAR(std::abs(c2[peak] - expected), 0.0, 1e-10);
}

TEST(C2FromTarget, FeedsBackToTarget) {
  ModelParams p;
  p.delta_k = 0.3;
  p.gamma_rad = 0.95;
  const auto g = CouplingProfile::constant(kGrid);
  const auto psi = make_target(TargetShape{DoubleGaussian{}, 0.9}, p, kGrid);
  const auto back = emission_envelope(c2_from_target(psi, p, g, kGrid), g, p, kGrid);
  EXPECT_LT(numerics::max_abs_diff(back.values(), psi.values()), 1e-4);
}

TEST(C2FromTarget, PhysicalityGate) {
  ModelParams weak;
  weak.rabi = 0.05;
  const auto g = CouplingProfile::constant(kGrid);
  EXPECT_THROW(c2_from_target(make_target(TargetShape{}, weak, kGrid), weak, g, kGrid), ValidationError);
  EXPECT_THROW(c2_from_target(make_target(TargetShape{}, ModelParams{}, kGrid), ModelParams{},
                              CouplingProfile::decoupled(kGrid), kGrid),
               ValidationError);
}

TEST(DFromC2, RabiDerivativeWithoutCavity) {
  ModelParams p;
  p.rabi = 0.0;
  const double omega = 0.5;
  const TimeGrid grid(20.0, 4096);
  std::vector<complex> c2(grid.size());
  for (std::size_t i = 0; i < c2.size(); ++i) c2[i] = complex(0.0, std::sin(0.5 * omega * grid.time(i)));
  const auto d = d_from_c2(ComplexSignal(grid, c2), CouplingProfile::constant(grid), p, grid);
  for (std::size_t i = 0; i < grid.size(); i += 64) {
    ASSERT_NEAR(std::abs(d[i] - complex(0.0, 0.5 * omega * std::cos(0.5 * omega * grid.time(i)))), 0.0, 1e-6);
  }
  EXPECT_EQ(numerics::max_abs(d_from_c2(ComplexSignal(grid), CouplingProfile::constant(grid), ModelParams{}, grid)
                                  .values()),
            0.0);
}

TEST(DFromC2, RoutesAgree) {
  ModelParams p;
  p.delta_k = -0.2;
  const auto g = CouplingProfile::constant(kGrid);
  const auto c2 = c2_from_target(make_target(TargetShape{}, p, kGrid), p, g, kGrid);
  const auto a = d_from_c2(c2, g, p, kGrid, MemoryRoute::quadrature);
  const auto b = d_from_c2(c2, g, p, kGrid, MemoryRoute::lift);
  EXPECT_LT(numerics::max_abs_diff(a.values(), b.values()), 1e-8);
}

TEST(Pump, TrivialCases) {
  const TimeGrid grid(10.0, 256);
  std::vector<complex> dv(grid.size());
  for (std::size_t i = 0; i < dv.size(); ++i) dv[i] = complex(0.1, std::sin(grid.time(i)));
  const ComplexSignal d(grid, dv);
  const auto f = pump_from_dynamics(d, ComplexSignal(grid), grid);
  EXPECT_EQ(numerics::max_abs_diff(f.values(), d.values()), 0.0);
  EXPECT_EQ(f[0], d[0]);
}

TEST(Pump, SingularPulseIsReported) {
  // f = 1 / (1 - int f) reaches the pole at t = 1/2.
  const TimeGrid grid(1.0, 1024);
  const ComplexSignal ones(grid, std::vector<complex>(grid.size(), 1.0));
  try {
    pump_from_dynamics(ones, ones, grid);
    FAIL() << "expected a singular pulse";
  } catch (const NumericalError& e) {
    ASSERT_TRUE(e.step().has_value());
    EXPECT_NEAR(grid.time(*e.step()), 0.5, 0.01);
  }
}

// With a real drive (f purely imaginary) the relations take the literal form
//   D = f + int f(t) f(t') C2(t') dt'   and   D f' + C2 f^3 - D' f = 0.
TEST(Pump, LiteralFormInRealDriveGauge) {
  const ModelParams p;
  const auto g = CouplingProfile::constant(kGrid);
  const auto real_target = make_target(TargetShape{}, p, kGrid);
  std::vector<complex> rotated(kGrid.size());
  for (std::size_t i = 0; i < rotated.size(); ++i) rotated[i] = complex(0.0, 1.0) * real_target[i];
  const ComplexSignal psi(kGrid, rotated);

  const auto c2 = c2_from_target(psi, p, g, kGrid);
  const auto d = d_from_c2(c2, g, p, kGrid);
  const auto f = pump_from_dynamics(d, c2, kGrid);
  for (const auto& v : f) ASSERT_NEAR(v.real(), 0.0, 1e-12 + 1e-9 * std::abs(v));

  std::vector<complex> fc(kGrid.size());
  for (std::size_t i = 0; i < fc.size(); ++i) fc[i] = f[i] * c2[i];
  const auto memory = numerics::cumulative_trapezoid<complex>(fc, kGrid.dt());
  double residual = 0.0;
  for (std::size_t i = 0; i < fc.size(); ++i) residual = std::max(residual, std::abs(f[i] + f[i] * memory[i] - d[i]));
  EXPECT_LT(residual / numerics::max_abs(d.values()), 1e-6);

  const auto fd = numerics::centered_derivative(f.values(), kGrid.dt());
  const auto dd = numerics::centered_derivative(d.values(), kGrid.dt());
  double ode = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < fc.size(); ++i) {
    ode = std::max(ode, std::abs(d[i] * fd[i] + c2[i] * f[i] * f[i] * f[i] - dd[i] * f[i]));
    scale = std::max(scale, std::abs(d[i] * fd[i]));
  }
  EXPECT_LT(ode / scale, 1e-4);
}

TEST(Pump, RoutesConvergeTowardEachOther) {
  const ModelParams p;
  auto gap = [&](std::size_t n) {
    const TimeGrid grid(200.0, n);
    const auto g = CouplingProfile::constant(grid);
    const auto c2 = c2_from_target(make_target(TargetShape{}, p, grid), p, g, grid);
    const auto d = d_from_c2(c2, g, p, grid);
    return numerics::max_abs_diff(pump_from_dynamics(d, c2, grid).values(),
                                  pump_from_dynamics_ode(d, c2, grid).f.values());
  };
  const double a = gap(4096), b = gap(8192);
  EXPECT_GE(std::log2(a / b), 1.9);
}

TEST(Pump, PiPhaseTargetCrossesZero) {
  DoubleGaussian shape;
  shape.rel_phase = std::numbers::pi;
  const ModelParams p;
  const auto g = CouplingProfile::constant(kGrid);
  const auto c2 = c2_from_target(make_target(TargetShape{shape, 0.9}, p, kGrid), p, g, kGrid);
  const auto d = d_from_c2(c2, g, p, kGrid);
  const auto ode = pump_from_dynamics_ode(d, c2, kGrid);
  ASSERT_TRUE(ode.d_zero_crossing.has_value());
  const double t = kGrid.time(*ode.d_zero_crossing);
  EXPECT_GT(t, 80.0);
  EXPECT_LT(t, 130.0);
  EXPECT_LT(numerics::max_abs_diff(ode.f.values(), pump_from_dynamics(d, c2, kGrid).values()), 1e-6);
}

TEST(PulsePlan, InvertsDriveFactor) {
  ModelParams p;
  p.delta_p = 0.25;
  const TimeGrid grid(10.0, 100);
  std::vector<complex> f(grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = complex(0.0, 0.5) * 0.7 * std::exp(complex(0.0, -p.delta_p * grid.time(i)));
  const auto plan = pulse_plan(ComplexSignal(grid, f), p);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ASSERT_NEAR(plan.amplitude[i], 0.7, 1e-14);
    ASSERT_NEAR(plan.phase[i], 0.0, 1e-12);
  }
  EXPECT_NEAR(plan.residual_phase_flatness, 0.0, 1e-12);
  const auto drive = plan.drive(p);
  EXPECT_NEAR(std::abs(drive[50] - 0.7), 0.0, 1e-14);

  const auto zero = pulse_plan(ComplexSignal(grid), p);
  EXPECT_EQ(zero.max_amplitude, 0.0);
}

TEST(Roundtrip, SingleBinRegressionFloor) {
  const auto r = roundtrip(single(100.0, 10.0, 0.8), ModelParams{}, CouplingProfile::constant(kGrid), kGrid);
  EXPECT_GE(r.fidelity, 0.999);
  EXPECT_NEAR(r.eta_achieved, 0.8, 1e-4);
  EXPECT_EQ(r.drive_peaks, 1u);
}

TEST(Roundtrip, StageErrorsAreNamed) {
  try {
    roundtrip(single(100.0, 0.1, 0.5), ModelParams{}, CouplingProfile::constant(kGrid), kGrid);
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "validate_target");
    EXPECT_FALSE(e.numerical());
    EXPECT_NE(std::string(e.what()).find("bandwidth"), std::string::npos);
  }
}

TEST(Roundtrip, FidelityFallsWithBandwidthBeyondCavityLine) {
  const TimeGrid grid(200.0, 1 << 12);
  RoundtripOptions opt;
  opt.validate = false;
  opt.cross_check_ode = false;
  double previous = 1.0;
  bool fired = false;
  for (double width : {0.4, 0.3, 0.25, 0.2, 0.15, 0.12, 0.1}) {
    const auto shape = single(100.0, width, 0.01);
    const auto target = make_target(shape, ModelParams{}, grid);
    bool bandwidth = false;
    for (const auto& d : validate_target(target, grid, ModelParams{})) bandwidth = bandwidth || d.field == "bandwidth";
    const auto r = roundtrip(shape, ModelParams{}, CouplingProfile::constant(grid), grid, opt);
    if (fired || bandwidth) {
      EXPECT_LE(r.fidelity, previous) << "width " << width;
    }
    fired = fired || bandwidth;
    previous = r.fidelity;
  }
  EXPECT_TRUE(fired);
}

}  // namespace
}  // namespace cqed
