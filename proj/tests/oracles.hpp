// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, independent of the library code paths they check.
#pragma once

#include <cmath>
#include <functional>

namespace oracle {

// 50-term ascending series for J1 in extended precision.
inline double bessel_j1_series50(double x) {
  const long double half = static_cast<long double>(x) / 2.0L;
  const long double q = half * half;
  long double term = half;
  long double acc = term;
  for (int m = 1; m < 50; ++m) {
    term *= -q / (static_cast<long double>(m) * (m + 1));
    acc += term;
  }
  return static_cast<double>(acc);
}

// Plain fixed-grid composite Simpson; the grid-refinement reference for the
// adaptive integrator.
inline double fixed_simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; i += 2) odd += f(a + i * h);
  for (int i = 2; i < n; i += 2) even += f(a + i * h);
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

// Hufnagel-Valley profile written out independently of the library.
inline double cn2_hv_reference(double h, double a0, double wind) {
  return 0.00594 * std::pow(wind / 27.0, 2.0) * std::pow(1e-5 * h, 10.0) * std::exp(-h / 1000.0) +
         2.7e-16 * std::exp(-2.0 * h / 3000.0) + a0 * std::exp(-h / 100.0);
}

}  // namespace oracle
