// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "oracles.hpp"
#include "qlink/quadrature.hpp"
#include "qlink/units.hpp"

using qlink::integrate_adaptive_simpson;
using qlink::integrate_fixed_simpson;

TEST_CASE("adaptive Simpson on closed forms") {
  CHECK(integrate_adaptive_simpson([](double x) { return x * x; }, 0.0, 3.0) ==
        doctest::Approx(9.0).epsilon(1e-10));
  CHECK(integrate_adaptive_simpson([](double x) { return std::exp(-x); }, 0.0, 50.0) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(integrate_adaptive_simpson([](double x) { return std::sin(x); }, 0.0, qlink::kPi) ==
        doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("zero integrand integrates to exactly zero") {
  CHECK(integrate_adaptive_simpson([](double) { return 0.0; }, 0.0, 30e3) == 0.0);
}

TEST_CASE("adaptive result matches a refined fixed grid") {
  auto f = [](double x) { return std::exp(-x / 1500.0) + 0.01 * std::sin(x / 37.0); };
  const double adaptive = integrate_adaptive_simpson(f, 0.0, 30e3);
  const double fine = oracle::fixed_simpson(f, 0.0, 30e3, 200000);
  CHECK(adaptive == doctest::Approx(fine).epsilon(1e-8));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(integrate_adaptive_simpson([](double) { return 1.0; }, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate_adaptive_simpson([](double) { return 1.0; }, 0.0, 1.0, -1.0),
                  std::invalid_argument);
}

TEST_CASE("non-convergence is reported with the achieved error estimate") {
  // oscillation far below any reachable panel width: the estimates never
  // settle and the integrator must say so instead of returning a number
  auto noise = [](double x) { return std::sin(1e8 * x); };
  try {
    integrate_adaptive_simpson(noise, 0.0, 30e3);
    FAIL("expected QuadratureError");
  } catch (const qlink::QuadratureError& e) {
    CHECK(e.achieved_rel_error() > 0.0);
  }
}
