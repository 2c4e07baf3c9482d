// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace qlink {

// Raised when adaptive refinement hits the depth limit before reaching the
// requested tolerance; carries the achieved error estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_rel_error)
      : std::runtime_error(what), achieved_rel_error_(achieved_rel_error) {}
  double achieved_rel_error() const { return achieved_rel_error_; }

 private:
  double achieved_rel_error_;
};

inline constexpr double kDefaultQuadRelTol = 1e-8;

// Adaptive composite Simpson integration of f over [a, b] to the given
// relative tolerance (absolute near zero).
double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol = kDefaultQuadRelTol);

// Fixed-grid composite Simpson with n subintervals (n is rounded up to even).
// Test suites use this as the independent grid-refinement oracle.
double integrate_fixed_simpson(const std::function<double(double)>& f, double a, double b,
                               int n);

}  // namespace qlink
