#pragma once

// Reference conformal maps used to verify the asymptotic evaluators: an
// evaluable forward map Phi_ref onto the upper half plane with the cusp prime
// end at 0, and its inverse Psi_ref.  Closed-form oracles come from the
// catalog below; numeric ones from the zipper engine.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cuspmap/cusp.hpp"

namespace cuspmap {

struct ConformalOracle {
  enum class Kind { closed_form, numeric };
  Kind kind = Kind::closed_form;
  std::function<std::complex<double>(std::complex<double>)> forward;  // Phi_ref
  std::function<std::complex<double>(std::complex<double>)> inverse;  // Psi_ref
  std::map<std::string, double> meta;
};

// --- catalog presets ---------------------------------------------------------

// Domain between the segment [0,R] and the circle of radius r tangent to the
// real axis at 0; angle function arcsin(t/(2r)).
inline NormalizedCusp make_tangent_circles_cusp(double r, int trunc = 48) {
  if (!(r > 0.0)) throw std::invalid_argument("tangent_circles: r must be positive");
  auto angle = compose(arcsin_series(trunc), TruncatedSeries<double>::monomial(1.0 / (2.0 * r), 1, trunc));
  return make_cusp(std::move(angle), r);
}

// Angle function t - t^2 on radius 1/2.
inline NormalizedCusp make_example_2_6_cusp(int trunc = 32) {
  auto angle = TruncatedSeries<double>::zero(trunc);
  angle.c[1] = 1.0;
  angle.c[2] = -1.0;
  return make_cusp(std::move(angle), 0.5);
}

// Exact maps for the catalog domains.  tangent_circles(r):
//   z -> 1/z sends the circle to the line Im w = -1/(2r) and the domain to a
//   strip of height 1/(2r); w -> exp(-2 pi r w) opens the strip onto the half
//   plane, so Phi_ref(z) = exp(-2 pi r / z) with the segment on the positive
//   reals and the circular arc on the negative reals.
// tangent_circles_sqrt(r): the sqrt-pulled-back domain, Phi_ref(z) = exp(-2 pi r / z^2).
inline ConformalOracle catalog_map(const std::string& name, double r) {
  using C = std::complex<double>;
  if (!(r > 0.0)) throw std::invalid_argument("catalog_map: r must be positive");
  const double k = 2.0 * std::numbers::pi * r;
  ConformalOracle o;
  o.kind = ConformalOracle::Kind::closed_form;
  o.meta["r"] = r;
  if (name == "tangent_circles") {
    o.forward = [k](C z) { return z == C{} ? C{} : std::exp(-k / z); };
    o.inverse = [k](C w) { return w == C{} ? C{} : C(-k) / std::log(w); };
    o.meta["variant"] = 1.0;
  } else if (name == "tangent_circles_sqrt") {
    o.forward = [k](C z) { return z == C{} ? C{} : std::exp(-k / (z * z)); };
    o.inverse = [k](C w) { return w == C{} ? C{} : std::sqrt(C(-k) / std::log(w)); };
    o.meta["variant"] = 2.0;
  } else {
    throw std::invalid_argument("catalog_map: unknown preset '" + name + "'");
  }
  return o;
}

}  // namespace cuspmap
