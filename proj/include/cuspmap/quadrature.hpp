#pragma once

// Adaptive quadrature of the modulus integrand -pi / (t angle(t)).
//
// Panels use a 15-point Gauss-Legendre rule whose nodes are generated at
// runtime by Newton iteration on the Legendre recurrence, so the rule
// instantiates at any precision (the t^3-type cusps push |h| beyond what
// double can resolve at the required drift tolerance).  The error estimate
// per panel is interval halving: |GL(panel) - GL(left) - GL(right)|.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cuspmap/cusp.hpp"
#include "cuspmap/series.hpp"

namespace cuspmap {

namespace detail {

template <class Real>
struct GaussLegendreRule {
  std::vector<Real> node;    // on (-1, 1)
  std::vector<Real> weight;
};

template <class Real>
GaussLegendreRule<Real> build_gauss_legendre(int n) {
  using std::cos;
  GaussLegendreRule<Real> rule;
  rule.node.resize(static_cast<std::size_t>(n));
  rule.weight.resize(static_cast<std::size_t>(n));
  const Real one = Real(1);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n
    Real x = Real(cos(3.14159265358979323846 * (double(i) + 0.75) / (double(n) + 0.5)));
    Real dp{};
    for (int it = 0; it < 12; ++it) {
      Real p0 = one, p1 = x;
      for (int k = 1; k < n; ++k) {
        const Real p2 = (Real(2 * k + 1) * x * p1 - Real(k) * p0) / Real(k + 1);
        p0 = p1;
        p1 = p2;
      }
      dp = Real(n) * (x * p1 - p0) / (x * x - one);
      x -= p1 / dp;
    }
    rule.node[static_cast<std::size_t>(i)] = x;
    rule.weight[static_cast<std::size_t>(i)] = Real(2) / ((one - x * x) * dp * dp);
  }
  return rule;
}

template <class Real>
const GaussLegendreRule<Real>& gl15() {
  static const GaussLegendreRule<Real> rule = build_gauss_legendre<Real>(15);
  return rule;
}

template <class Real, class F>
Real gl_panel(const F& f, Real a, Real b) {
  const auto& rule = gl15<Real>();
  const Real mid = (a + b) / Real(2);
  const Real half = (b - a) / Real(2);
  Real acc{};
  for (std::size_t i = 0; i < rule.node.size(); ++i)
    acc += rule.weight[i] * f(mid + half * rule.node[i]);
  return acc * half;
}

template <class Real, class F>
Real adaptive_panel(const F& f, Real a, Real b, Real tol, int depth, long& budget) {
  if (depth > 60)
    throw std::runtime_error("adaptive quadrature: no convergence past depth 60");
  if (--budget < 0)
    throw std::runtime_error("adaptive quadrature: panel budget exhausted (non-convergent integrand)");
  const Real whole = gl_panel(f, a, b);
  const Real mid = (a + b) / Real(2);
  if (!(a < mid && mid < b)) return whole;  // interval at rounding resolution
  const Real left = gl_panel(f, a, mid);
  const Real right = gl_panel(f, mid, b);
  using std::abs;
  const Real err = abs(left + right - whole);
  if (err <= tol) return left + right;
  // The halving estimate bottoms out at the rounding noise of the panel
  // values; below that, subdividing only spreads the noise around.
  const Real scale = abs(whole) + abs(left) + abs(right);
  if (scale == scale && scale < (std::numeric_limits<Real>::max)() &&
      err <= Real(64) * std::numeric_limits<Real>::epsilon() * scale)
    return left + right;
  return adaptive_panel(f, a, mid, tol / Real(2), depth + 1, budget) +
         adaptive_panel(f, mid, b, tol / Real(2), depth + 1, budget);
}

}  // namespace detail

template <class Real, class F>
Real adaptive_integrate(const F& f, Real a, Real b, Real abs_tol, long panel_budget = 200000) {
  return detail::adaptive_panel<Real>(f, a, b, abs_tol, 0, panel_budget);
}

// h(r) = -pi int_r^delta dt / (t angle(t)), integrated from the angle-function
// series itself (not its Laurent inverse; the independence from the b_j route
// is the point of this oracle).
template <class Real = double>
Real quadrature_h(const NormalizedCusp& cusp, Real r, Real delta,
                  Real abs_tol = Real(1e-10)) {
  if (!(Real(0) < r && r < delta && double(delta) <= cusp.radius + 1e-15))
    throw std::domain_error("quadrature_h: need 0 < r < delta <= radius");
  const Real pi = detail::const_pi<Real>();
  auto tail = TruncatedSeries<Real>::zero(cusp.angle.trunc());
  for (int j = 0; j < cusp.angle.trunc(); ++j) tail.c[static_cast<std::size_t>(j)] = Real(cusp.angle.c[static_cast<std::size_t>(j)]);
  const auto integrand = [&](Real t) { return -pi / (t * eval_at(tail, t)); };
  return adaptive_integrate<Real>(integrand, r, delta, abs_tol);
}

}  // namespace cuspmap
