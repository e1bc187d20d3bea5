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

#include "cqed/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cqed::numerics {

template <class T>
std::vector<T> centered_derivative(std::span<const T> y, double dt) {
  const std::size_t n = y.size();
  std::vector<T> d(n, T{});
  if (n < 3) {
    if (n == 2) d[0] = d[1] = (y[1] - y[0]) / dt;
    return d;
  }
  const double h2 = 2.0 * dt;
  d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / h2;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / h2;
  d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / h2;
  return d;
}

template <class T>
T interval_integral(std::span<const T> y, std::size_t j, double dt) {
  const std::size_t n = y.size();
  if (n < 4) return 0.5 * dt * (y[j] + y[j + 1]);
  const double w = dt / 24.0;
  if (j == 0) return w * (9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3]);
  if (j + 2 == n) return w * (y[n - 4] - 5.0 * y[n - 3] + 19.0 * y[n - 2] + 9.0 * y[n - 1]);
  return w * (-y[j - 1] + 13.0 * y[j] + 13.0 * y[j + 1] - y[j + 2]);
}

template <class T>
std::vector<T> cumulative_integral(std::span<const T> y, double dt) {
  std::vector<T> out(y.size(), T{});
  for (std::size_t j = 0; j + 1 < y.size(); ++j) out[j + 1] = out[j] + interval_integral(y, j, dt);
  return out;
}

std::vector<double> cumulative_integral_nonneg(std::span<const double> y, double dt) {
  std::vector<double> out(y.size(), 0.0);
  for (std::size_t j = 0; j + 1 < y.size(); ++j) {
    double piece = interval_integral(y, j, dt);
    if (piece < 0.0) piece = 0.5 * dt * (y[j] + y[j + 1]);
    out[j + 1] = out[j] + piece;
  }
  return out;
}

template <class T>
std::vector<T> cumulative_trapezoid(std::span<const T> y, double dt) {
  std::vector<T> out(y.size(), T{});
  for (std::size_t j = 0; j + 1 < y.size(); ++j) out[j + 1] = out[j] + 0.5 * dt * (y[j] + y[j + 1]);
  return out;
}

template <class T>
T midpoint(std::span<const T> y, std::size_t j) {
  const std::size_t n = y.size();
  if (n < 4) return 0.5 * (y[j] + y[j + 1]);
  constexpr double s = 1.0 / 16.0;
  if (j == 0) return s * (5.0 * y[0] + 15.0 * y[1] - 5.0 * y[2] + y[3]);
  if (j + 2 == n) return s * (y[n - 4] - 5.0 * y[n - 3] + 15.0 * y[n - 2] + 5.0 * y[n - 1]);
  return s * (-y[j - 1] + 9.0 * y[j] + 9.0 * y[j + 1] - y[j + 2]);
}

template <class T>
T interpolate(std::span<const T> y, double x) {
  const std::size_t n = y.size();
  const double xr = std::round(x);
  if (std::abs(x - xr) < 1e-12) return y[static_cast<std::size_t>(std::clamp(xr, 0.0, double(n - 1)))];
  if (n < 4) {
    const auto j = std::min(static_cast<std::size_t>(x), n - 2);
    const double u = x - static_cast<double>(j);
    return (1.0 - u) * y[j] + u * y[j + 1];
  }
  // Four-point stencil j0..j0+3 around x.
  auto j0 = static_cast<std::ptrdiff_t>(std::floor(x)) - 1;
  j0 = std::clamp<std::ptrdiff_t>(j0, 0, static_cast<std::ptrdiff_t>(n) - 4);
  T acc{};
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b != a) w *= (x - double(j0 + b)) / double(a - b);
    }
    acc += w * y[static_cast<std::size_t>(j0 + a)];
  }
  return acc;
}

double linear_interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  const auto j = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double u = (x - xs[j]) / (xs[j + 1] - xs[j]);
  return (1.0 - u) * ys[j] + u * ys[j + 1];
}

std::size_t count_local_maxima(std::span<const double> y, double prominence_fraction) {
  const std::size_t n = y.size();
  if (n < 3) return 0;
  const double threshold = prominence_fraction * *std::max_element(y.begin(), y.end());
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    // Prominence: height above the higher of the two bases, each base being
    // the minimum between the peak and the nearest strictly higher sample.
    double left_base = y[i];
    for (std::size_t k = i; k-- > 0 && y[k] <= y[i];) left_base = std::min(left_base, y[k]);
    double right_base = y[i];
    for (std::size_t k = i + 1; k < n && y[k] <= y[i]; ++k) right_base = std::min(right_base, y[k]);
    if (y[i] - std::max(left_base, right_base) >= threshold) ++count;
  }
  return count;
}

template <class T>
double max_abs(std::span<const T> y) {
  double m = 0.0;
  for (const auto& v : y) m = std::max(m, std::abs(v));
  return m;
}

template <class T>
double max_abs_diff(std::span<const T> a, std::span<const T> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

complex inner_product(std::span<const complex> a, std::span<const complex> b, double dt) {
  complex acc{};
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    acc += w * std::conj(a[i]) * b[i];
  }
  return acc * dt;
}

double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::remainder(angle, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

#define CQED_INSTANTIATE(T)                                                              \
  template std::vector<T> centered_derivative<T>(std::span<const T>, double);            \
  template T interval_integral<T>(std::span<const T>, std::size_t, double);              \
  template std::vector<T> cumulative_integral<T>(std::span<const T>, double);            \
  template std::vector<T> cumulative_trapezoid<T>(std::span<const T>, double);           \
  template T midpoint<T>(std::span<const T>, std::size_t);                               \
  template T interpolate<T>(std::span<const T>, double);                                 \
  template double max_abs<T>(std::span<const T>);                                        \
  template double max_abs_diff<T>(std::span<const T>, std::span<const T>);

CQED_INSTANTIATE(double)
CQED_INSTANTIATE(complex)

#undef CQED_INSTANTIATE

}  // namespace cqed::numerics
