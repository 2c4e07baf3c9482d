// SPDX-License-Identifier: Apache-2.0
#include "qlink/bessel.hpp"

#include <cmath>

#include "qlink/units.hpp"

namespace qlink {

namespace {

double j1_series(double x) {
  // J1(x) = sum_m (-1)^m / (m! (m+1)!) (x/2)^(2m+1)
  const double half = 0.5 * x;
  const double q = half * half;
  double term = half;
  double acc = term;
  for (int m = 1; m < 64; ++m) {
    term *= -q / (static_cast<double>(m) * (m + 1));
    acc += term;
    if (std::fabs(term) < 1e-18 * (std::fabs(acc) + 1e-300)) break;
  }
  return acc;
}

double j1_asymptotic(double x) {
  // Hankel expansion, mu = 4 nu^2 = 4:
  //   J1(x) = sqrt(2/(pi x)) [P(x) cos(chi) - Q(x) sin(chi)], chi = x - 3pi/4
  const double ix = 1.0 / x;
  const double ix2 = ix * ix;
  constexpr double mu = 4.0;
  const double p2 = (mu - 1.0) * (mu - 9.0) / (2.0 * 64.0);
  const double p4 = (mu - 1.0) * (mu - 9.0) * (mu - 25.0) * (mu - 49.0) / (24.0 * 4096.0);
  const double p6 = (mu - 1.0) * (mu - 9.0) * (mu - 25.0) * (mu - 49.0) * (mu - 81.0) *
                    (mu - 121.0) / (720.0 * 262144.0);
  const double q1 = (mu - 1.0) / 8.0;
  const double q3 = (mu - 1.0) * (mu - 9.0) * (mu - 25.0) / (6.0 * 512.0);
  const double q5 =
      (mu - 1.0) * (mu - 9.0) * (mu - 25.0) * (mu - 49.0) * (mu - 81.0) / (120.0 * 32768.0);
  const double p = 1.0 - p2 * ix2 + p4 * ix2 * ix2 - p6 * ix2 * ix2 * ix2;
  const double q = q1 * ix - q3 * ix * ix2 + q5 * ix * ix2 * ix2;
  const double chi = x - 0.75 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j1(double x) {
  const double ax = std::fabs(x);
  const double v = ax <= 12.0 ? j1_series(ax) : j1_asymptotic(ax);
  return x < 0.0 ? -v : v;  // J1 is odd
}

}  // namespace qlink
