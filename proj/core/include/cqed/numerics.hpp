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

// Grid quadrature, differentiation and interpolation helpers shared by the
// forward and inverse solvers. All stencils assume uniform spacing dt.

#include <cstddef>
#include <span>
#include <vector>

#include "cqed/signal.hpp"

namespace cqed::numerics {

/// Second-order centered differences, second-order one-sided at both ends.
template <class T>
std::vector<T> centered_derivative(std::span<const T> y, double dt);

/// Integral over [t_j, t_{j+1}] of the cubic through the four nearest nodes
/// (fourth order). Falls back to the trapezoid when fewer than four nodes exist.
template <class T>
T interval_integral(std::span<const T> y, std::size_t j, double dt);

/// Running integral I_n = int_0^{t_n} y, fourth order, I_0 = 0.
template <class T>
std::vector<T> cumulative_integral(std::span<const T> y, double dt);

/// Running integral of a nonnegative integrand. Uses the fourth-order interval
/// rule but swaps in the trapezoid on any interval where the cubic rule would
/// go negative, so the result is nondecreasing.
std::vector<double> cumulative_integral_nonneg(std::span<const double> y, double dt);

/// Running trapezoid integral, I_0 = 0.
template <class T>
std::vector<T> cumulative_trapezoid(std::span<const T> y, double dt);

/// Cubic interpolation at t_j + dt/2.
template <class T>
T midpoint(std::span<const T> y, std::size_t j);

/// Cubic Lagrange interpolation at fractional index x in [0, n-1].
template <class T>
T interpolate(std::span<const T> y, double x);

/// Linear interpolation of (xs, ys) at x; xs strictly increasing, x inside.
double linear_interpolate(std::span<const double> xs, std::span<const double> ys, double x);

/// Counts interior local maxima whose prominence exceeds
/// prominence_fraction * max(y).
std::size_t count_local_maxima(std::span<const double> y, double prominence_fraction);

template <class T>
double max_abs(std::span<const T> y);

template <class T>
double max_abs_diff(std::span<const T> a, std::span<const T> b);

/// Trapezoid inner product <a|b> = int conj(a) b.
complex inner_product(std::span<const complex> a, std::span<const complex> b, double dt);

/// Wraps an angle to (-pi, pi].
double wrap_phase(double angle);

}  // namespace cqed::numerics
