#pragma once

// Cusp domains in normal form and their geometric invariants.
//
// A cusp is ingested either directly as an angle function (the domain is
// { 0 < arg z < angle(|z|), |z| < R }) or as a pair of analytic arcs meeting
// at the origin.  normalize() reduces an arc pair to the angle-function form:
// the straight arc is inverted away, the curved arc is reparameterized by
// distance from the origin, and the resulting polar argument is the angle
// function.  compute_tuple() extracts the invariants
//   N = ord(angle), a = lc(angle),
//   b_j   coefficients of t^N / angle(t),
//   c_j = pi b_j / (j - N)  (j < N),   sigma = pi b_N.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuspmap/series.hpp"

namespace cuspmap {

struct ArcPair {
  TruncatedSeries<double> gamma_re, gamma_im;            // curved arc
  TruncatedSeries<double> gammatilde_re, gammatilde_im;  // straight-side arc
  double epsilon = 0.0;                                  // parameter radius
};

struct NormalizedCusp {
  TruncatedSeries<double> angle;  // angle function, ord >= 1, lc > 0
  double radius = 0.0;            // validity radius R
  bool relabeled = false;         // arcs were swapped to make the angle positive
};

struct AsymptoticTuple {
  int N = 0;              // order of tangency
  double a = 0.0;         // coefficient of tangency
  std::vector<double> b;  // b_0 .. b_M
  std::vector<double> c;  // c_0 .. c_{N-1}
  double sigma = 0.0;
};

namespace detail {

inline void check_angle_positivity(const TruncatedSeries<double>& angle, double radius) {
  constexpr int kSamples = 1024;
  for (int i = 1; i <= kSamples; ++i) {
    const double t = radius * double(i) / double(kSamples);
    if (!(eval_at(angle, t) > 0.0))
      throw std::domain_error("angle function is not positive on ]0,R[ (sampled)");
  }
}

// |gamma|(t) as a series: sqrt(re^2 + im^2) for an arc with ord(re)=1,
// ord(im)>=2, taking the branch with positive leading coefficient.
inline TruncatedSeries<double> modulus_series(const TruncatedSeries<double>& re,
                                              const TruncatedSeries<double>& im) {
  auto s = add(mul(re, re), mul(im, im));
  if (s.trunc() < 3 || s.c[0] != 0.0 || s.c[1] != 0.0 || !(s.c[2] > 0.0))
    throw std::domain_error("modulus_series: arc must be regular at the origin");
  // s = t^2 u with u(0) > 0
  TruncatedSeries<double> u(std::vector<double>(s.c.begin() + 2, s.c.end()));
  auto r = sqrt_series(u);
  auto out = TruncatedSeries<double>::zero(r.trunc() + 1);
  for (int j = 0; j < r.trunc(); ++j) out.c[static_cast<std::size_t>(j + 1)] = r.c[static_cast<std::size_t>(j)];
  return out;
}

inline TruncatedSeries<std::complex<double>> complexify(const TruncatedSeries<double>& re,
                                                        const TruncatedSeries<double>& im) {
  const int m = std::min(re.trunc(), im.trunc());
  auto out = TruncatedSeries<std::complex<double>>::zero(m);
  for (int j = 0; j < m; ++j)
    out.c[static_cast<std::size_t>(j)] = {re.c[static_cast<std::size_t>(j)], im.c[static_cast<std::size_t>(j)]};
  return out;
}

inline bool is_identity_series(const TruncatedSeries<std::complex<double>>& s) {
  for (int j = 0; j < s.trunc(); ++j) {
    const auto want = (j == 1) ? std::complex<double>(1.0) : std::complex<double>(0.0);
    if (s.c[static_cast<std::size_t>(j)] != want) return false;
  }
  return s.trunc() >= 2;
}

// One pass of the reduction with a fixed labeling of the arcs.  Returns the
// polar-argument series mu(s) of the curved arc after the straight arc has
// been normalized to the identity.
inline TruncatedSeries<double> reduce_once(const TruncatedSeries<double>& g_re,
                                           const TruncatedSeries<double>& g_im,
                                           const TruncatedSeries<double>& h_re,
                                           const TruncatedSeries<double>& h_im) {
  if (g_re.trunc() < 2 || h_re.trunc() < 2)
    throw std::domain_error("normalize: arcs need truncation >= 2");
  if (g_re.c[0] != 0.0 || g_im.c[0] != 0.0 || h_re.c[0] != 0.0 || h_im.c[0] != 0.0)
    throw std::domain_error("normalize: arcs must pass through the origin");
  if (g_re.c[1] == 0.0 && g_im.c[1] == 0.0)
    throw std::domain_error("normalize: curved arc has vanishing derivative at 0");

  // Canonical reparameterization of the straight-side arc by distance from 0
  // makes the whole reduction depend on arc traces only.
  auto h_mod = modulus_series(h_re, h_im);
  auto rho = revert(h_mod);
  auto hc = complexify(compose(h_re, rho), compose(h_im, rho));

  auto g = complexify(g_re, g_im);
  if (!is_identity_series(hc)) {
    auto hc_inv = revert(hc);
    g = compose(hc_inv, g);
  }

  // After the reduction the curved arc must be regular and tangent to the
  // positive real axis.
  auto new_re = TruncatedSeries<double>::zero(g.trunc());
  auto new_im = TruncatedSeries<double>::zero(g.trunc());
  for (int j = 0; j < g.trunc(); ++j) {
    new_re.c[static_cast<std::size_t>(j)] = g.c[static_cast<std::size_t>(j)].real();
    new_im.c[static_cast<std::size_t>(j)] = g.c[static_cast<std::size_t>(j)].imag();
  }
  if (new_re.trunc() < 2 || new_re.c[1] == 0.0)
    throw std::domain_error("normalize: curved arc is singular after reduction");
  if (new_im.trunc() >= 2) {
    // The inversion of the straight arc leaves rounding noise on the
    // first-order imaginary coefficient of a genuinely tangent arc; snap it.
    if (std::abs(new_im.c[1]) <= 1e-10 * std::abs(new_re.c[1]))
      new_im.c[1] = 0.0;
    else
      throw std::domain_error("normalize: arcs meet with nonzero opening angle (not a cusp)");
  }
  if (new_re.c[1] < 0.0)
    throw std::domain_error("normalize: arcs leave the origin in opposite directions");

  // eta(t) = arctan(Im/Re), mu(s) = eta(|gamma|^{-1}(s))
  auto quot = divide(new_im, new_re);
  auto quot_ts = as_truncated(quot);
  if (quot_ts.trunc() > 0 && quot_ts.c[0] != 0.0)
    throw std::domain_error("normalize: tangency violated (ord(Im) < 2)");
  auto eta = compose(arctan_series(quot_ts.trunc() + 1), quot_ts);
  auto dist = modulus_series(new_re, new_im);
  auto mu = compose(eta, revert(dist));
  return mu;
}

}  // namespace detail

// Build a normalized cusp directly from an angle function, validating the
// general-assumption invariants.
inline NormalizedCusp make_cusp(TruncatedSeries<double> angle, double radius, bool relabeled = false) {
  auto o = ord(angle);
  if (!o || *o < 1) throw std::domain_error("make_cusp: angle function must have ord >= 1");
  if (!(lc(angle) > 0.0)) throw std::domain_error("make_cusp: coefficient of tangency must be positive");
  if (!(radius > 0.0)) throw std::domain_error("make_cusp: radius must be positive");
  detail::check_angle_positivity(angle, radius);
  return NormalizedCusp{std::move(angle), radius, relabeled};
}

// Reduce an arc pair to the angle-function normal form.  If the curved arc
// lies below the straight one the arcs are relabeled automatically and the
// flag is recorded in the result.
inline NormalizedCusp normalize(const ArcPair& arcs) {
  if (!(arcs.epsilon > 0.0)) throw std::domain_error("normalize: epsilon must be positive");
  auto mu = detail::reduce_once(arcs.gamma_re, arcs.gamma_im, arcs.gammatilde_re, arcs.gammatilde_im);

  bool relabeled = false;
  if (!ord(mu)) throw std::domain_error("normalize: arcs coincide, no cusp");
  if (lc(mu) < 0.0) {
    mu = detail::reduce_once(arcs.gammatilde_re, arcs.gammatilde_im, arcs.gamma_re, arcs.gamma_im);
    relabeled = true;
    if (!ord(mu) || lc(mu) < 0.0)
      throw std::domain_error("normalize: angle function negative under both labelings");
  }
  if (*ord(mu) < 1 || !(lc(mu) > 0.0))
    throw std::domain_error("normalize: degenerate angle function");

  double radius = arcs.epsilon / 4.0;  // conservative validity radius
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      detail::check_angle_positivity(mu, radius);
      break;
    } catch (const std::domain_error&) {
      if (attempt == 7) throw;
      radius /= 2.0;  // positivity can fail near the edge; shrink and retry
    }
  }
  return NormalizedCusp{std::move(mu), radius, relabeled};
}

// Invariants N, a, b_0..b_M, c_0..c_{N-1}, sigma of a normalized cusp.
// M < 0 selects the default max(2N+2, 8).
inline AsymptoticTuple compute_tuple(const NormalizedCusp& cusp, int M = -1) {
  AsymptoticTuple out;
  auto o = ord(cusp.angle);
  if (!o) throw std::domain_error("compute_tuple: angle function vanishes");
  out.N = *o;
  out.a = lc(cusp.angle);
  if (M < 0) M = std::max(2 * out.N + 2, 8);
  auto inv = mul_inverse(cusp.angle);  // t^{-N} sum b_j t^j
  if (inv.tail.trunc() < M + 1)
    throw std::domain_error(
        "compute_tuple: angle truncation too small for requested tuple length "
        "(need trunc >= N + M + 1)");
  out.b.assign(inv.tail.c.begin(), inv.tail.c.begin() + (M + 1));
  out.c.resize(static_cast<std::size_t>(out.N));
  for (int j = 0; j < out.N; ++j)
    out.c[static_cast<std::size_t>(j)] = std::numbers::pi * out.b[static_cast<std::size_t>(j)] / double(j - out.N);
  out.sigma = std::numbers::pi * out.b[static_cast<std::size_t>(out.N)];
  return out;
}

// Pullback under z -> sqrt(z):  angle_out(t) = angle(t^2) / 2, R_out = sqrt(R).
// The order of tangency doubles.
inline NormalizedCusp sqrt_transform(const NormalizedCusp& cusp) {
  const int m = cusp.angle.trunc();
  auto out = TruncatedSeries<double>::zero(2 * m);
  for (int j = 0; j < m; ++j)
    out.c[static_cast<std::size_t>(2 * j)] = cusp.angle.c[static_cast<std::size_t>(j)] / 2.0;
  return NormalizedCusp{std::move(out), std::sqrt(cusp.radius), cusp.relabeled};
}

// Small perturbation of angles: angle(t) = a t^N + o(t^{2N}), i.e. the stored
// coefficients a_{N+1} .. a_{2N} all vanish exactly.
inline bool is_small_perturbation(const NormalizedCusp& cusp) {
  auto o = ord(cusp.angle);
  if (!o) throw std::domain_error("is_small_perturbation: angle function vanishes");
  const int n = *o;
  if (cusp.angle.trunc() <= 2 * n)
    throw std::domain_error("is_small_perturbation: truncation must exceed 2N");
  for (int j = n + 1; j <= 2 * n; ++j)
    if (cusp.angle.c[static_cast<std::size_t>(j)] != 0.0) return false;
  return true;
}

}  // namespace cuspmap
