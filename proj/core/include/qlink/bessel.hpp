// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace qlink {

// Bessel function of the first kind, order one.
//
// |x| <= 12: ascending power series, summed until the next term falls below
// 1e-18 of the accumulated value (absolute accuracy better than 1e-12 over
// the whole interval). Beyond 12: Hankel asymptotic expansion with three
// terms in each of the P and Q cosine/sine amplitudes.
double bessel_j1(double x);

// First positive zero of J1; pointing loss reaches its floor here.
inline constexpr double kBesselJ1FirstZero = 3.8317059702075125;

}  // namespace qlink
