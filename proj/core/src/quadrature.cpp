// SPDX-License-Identifier: Apache-2.0
#include "qlink/quadrature.hpp"

#include <cmath>

namespace qlink {

namespace {

struct Panel {
  double a, b, fa, fm, fb, s;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

struct AdaptState {
  const std::function<double(double)>& f;
  long evals_left;     // global work bound across all panels
  double leftover = 0; // error surrendered by panels cut off early
};

// `force` demands that many further subdivisions before the error estimate
// may accept a panel; without it a fortuitous cancellation in sl + sr - s can
// pass a panel whose halves are both badly wrong.
double adapt(AdaptState& st, Panel p, double tol, int depth, int force) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  st.evals_left -= 2;
  const double sl = simpson(p.a, m, p.fa, flm, p.fm);
  const double sr = simpson(m, p.b, p.fm, frm, p.fb);
  const double err = (sl + sr - p.s) / 15.0;
  const bool out_of_room = depth <= 0 || st.evals_left <= 0;
  if ((force <= 0 && std::fabs(err) <= tol) || out_of_room) {
    if (out_of_room) st.leftover += std::fabs(err);
    return sl + sr + err;  // Richardson correction
  }
  return adapt(st, {p.a, m, p.fa, flm, p.fm, sl}, 0.5 * tol, depth - 1, force - 1) +
         adapt(st, {m, p.b, p.fm, frm, p.fb, sr}, 0.5 * tol, depth - 1, force - 1);
}

}  // namespace

double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol) {
  if (!(b > a)) throw std::invalid_argument("integrate_adaptive_simpson: requires b > a");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate_adaptive_simpson: rel_tol <= 0");

  // Scale estimate from a coarse pass so the tolerance is relative.
  const int kCoarse = 64;
  const double coarse = integrate_fixed_simpson(f, a, b, kCoarse);
  const double scale = std::fabs(coarse);
  if (scale == 0.0) {
    // Likely an identically-zero integrand; confirm on a finer grid.
    const double fine = integrate_fixed_simpson(f, a, b, 16 * kCoarse);
    if (fine == 0.0) return 0.0;
  }
  const double tol = rel_tol * (scale > 0.0 ? scale : 1.0);

  // Uniform pre-split, then adapt each panel with its share of the budget.
  const int kPanels = 32;
  const int kMaxDepth = 40;
  const int kForcedSplits = 2;
  const long kEvalBudget = 2'000'000;
  const double h = (b - a) / kPanels;
  AdaptState st{f, kEvalBudget};
  double result = 0.0;
  double fa = f(a);
  for (int i = 0; i < kPanels; ++i) {
    const double pa = a + i * h;
    const double pb = i + 1 == kPanels ? b : a + (i + 1) * h;
    const double fb = f(pb);
    const double fm = f(0.5 * (pa + pb));
    const double s0 = simpson(pa, pb, fa, fm, fb);
    result += adapt(st, {pa, pb, fa, fm, fb, s0}, tol / kPanels, kMaxDepth, kForcedSplits);
    fa = fb;
  }
  if (st.leftover > tol) {
    const double denom = std::fabs(result) > 0.0 ? std::fabs(result) : 1.0;
    throw QuadratureError("adaptive Simpson did not converge to requested tolerance",
                          st.leftover / denom);
  }
  return result;
}

double integrate_fixed_simpson(const std::function<double(double)>& f, double a, double b,
                               int n) {
  if (!(b > a)) throw std::invalid_argument("integrate_fixed_simpson: requires b > a");
  if (n < 2) n = 2;
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; i += 2) odd += f(a + i * h);
  for (int i = 2; i < n; i += 2) even += f(a + i * h);
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

}  // namespace qlink
