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
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cqed/error.hpp"
#include "cqed/model.hpp"

namespace cqed {
namespace {

TEST(ModelParams, ReferenceIsValid) { EXPECT_TRUE(validate_params(ModelParams::reference()).empty()); }

TEST(ModelParams, RadiativeFractionAboveOneIsRejected) {
  ModelParams p;
  p.gamma_rad = 1.2;
  const auto d = validate_params(p);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].field, "gamma_rad");
  EXPECT_NE(d[0].message.find("exceeds 1"), std::string::npos);
}

TEST(ModelParams, EachFieldIsChecked) {
  auto field_of = [](ModelParams p) {
    const auto d = validate_params(p);
    return d.empty() ? std::string() : d.front().field;
  };
  ModelParams p;
  p.rabi = -1.0;
  EXPECT_EQ(field_of(p), "rabi");
  p = {};
  p.gamma_k = 0.0;
  EXPECT_EQ(field_of(p), "gamma_k");
  p = {};
  p.delta_p = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(field_of(p), "delta_p");
  p = {};
  p.omega_k_abs = 10.0;
  EXPECT_EQ(field_of(p), "omega_k_abs");
}

TEST(Coupling, NarrowbandAndBroadband) {
  ModelParams p;
  EXPECT_EQ(coupling_strength(p), complex(4.0, 0.0));
  p.omega_k_abs = 1000.0;
  EXPECT_NEAR(coupling_strength(p).imag(), -4.0 * 1.0 / 2000.0, 1e-15);
  p.delta_k = 0.3;
  EXPECT_EQ(cavity_rate(p), complex(0.5, 0.3));
}

TEST(Geometry, VacuumRabiFromCouplingConstant) {
  GeometryParams g;
  g.omega_k = std::numbers::pi;  // sin^2(pi * -0.5) = 1
  EXPECT_NEAR(coupling_constant(g), 4.0, 1e-14);
  EXPECT_NEAR(vacuum_rabi(g), std::sqrt(4.0 * std::numbers::pi), 1e-14);
  g.z_emitter = 0.5;
  EXPECT_THROW(coupling_constant(g), ValidationError);
}

TEST(CouplingProfile, SamplesMustPeakAtOne) {
  const TimeGrid grid(10.0, 32);
  EXPECT_THROW(CouplingProfile::from_samples(RealSignal(grid, std::vector<double>(33, 0.5))), ValidationError);
  std::vector<double> v(33, 0.5);
  v[3] = -0.1;
  v[10] = 1.0;
  EXPECT_THROW(CouplingProfile::from_samples(RealSignal(grid, v)), ValidationError);
  v[3] = 0.2;
  EXPECT_NO_THROW(CouplingProfile::from_samples(RealSignal(grid, v)));
  EXPECT_NO_THROW(CouplingProfile::from_samples(RealSignal(grid)));
}

TEST(Kernel, RealDriveGivesTextbookForm) {
  const TimeGrid grid(10.0, 100);
  ModelParams p;
  std::vector<complex> omega(grid.size());
  for (std::size_t i = 0; i < omega.size(); ++i) omega[i] = 0.3 + 0.01 * static_cast<double>(i);
  const ComplexSignal pump(grid, omega);
  const auto g = CouplingProfile::constant(grid);
  const auto k = kernel_terms(p, pump, g, 5.0, 2.0);
  EXPECT_NEAR(std::abs(k.pump - complex(-0.25 * pump.at(5.0).real() * pump.at(2.0).real())), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(k.cavity - complex(-0.25 * 4.0 * std::exp(-0.5 * 3.0))), 0.0, 1e-14);
  EXPECT_THROW(kernel_eval(p, pump, g, 2.0, 5.0), std::invalid_argument);
  EXPECT_THROW(kernel_eval(p, pump, g, 11.0, 5.0), std::invalid_argument);
}

}  // namespace
}  // namespace cqed
