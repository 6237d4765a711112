#pragma once

// Evaluators for the asymptotic forms attached to a cusp tuple:
//
//   H(z) = sum_{j<N} c_j z^{j-N} + sigma Log z
//   F(z) = exp(H(z))                       ~ the mapping function at the cusp
//   F^(k)(z)/F(z)                          exact expansion via Faa di Bruno
//   G(z) = (-pi / (a N log|z|))^{1/N}      ~ the inverse map
//   G^(k)(z)                               exact expansion via the d_{k,j}
//
// plus the real modulus/argument asymptotes and the closed form of the
// modulus integral h(t).  All branches are the principal branch of Log on
// the plane slit along the negative reals.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cuspmap/cusp.hpp"
#include "cuspmap/series.hpp"

namespace cuspmap {

struct HFunction {
  AsymptoticTuple tuple;
};

inline HFunction make_h(AsymptoticTuple tuple) {
  if (tuple.c.empty() || tuple.c[0] == 0.0)
    throw std::domain_error("make_h: c_0 must be nonzero");
  return HFunction{std::move(tuple)};
}

namespace detail {

template <class R>
void check_h_domain(const std::complex<R>& z) {
  if (z == std::complex<R>{})
    throw std::domain_error("principal branch: z = 0");
  if (z.imag() == R(0) && z.real() < R(0))
    throw std::domain_error("principal branch: z on the negative real axis");
}

}  // namespace detail

template <class R>
std::complex<R> eval_H(const AsymptoticTuple& t, const std::complex<R>& z) {
  detail::check_h_domain(z);
  std::complex<R> acc{};
  for (int j = 0; j < t.N; ++j)
    acc += std::complex<R>(R(t.c[static_cast<std::size_t>(j)])) * pow_int(z, j - t.N);
  acc += std::complex<R>(R(t.sigma)) * std::log(z);
  return acc;
}

template <class R>
std::complex<R> eval_H(const HFunction& h, const std::complex<R>& z) {
  return eval_H(h.tuple, z);
}

// log-scale form of F; the primary numeric path near the cusp where
// exp(c_0 / z^N) underflows (c_0 < 0 always).
template <class R>
std::complex<R> eval_logF(const AsymptoticTuple& t, const std::complex<R>& z) {
  return eval_H(t, z);
}

template <class R>
std::complex<R> eval_F(const AsymptoticTuple& t, const std::complex<R>& z) {
  return std::exp(eval_H(t, z));
}

// |z|^sigma exp(sum c_j |z|^{j-N}): the modulus asymptote of Prop. on the
// modulus, evaluated for real r > 0.
inline double modulus_asymptote(const AsymptoticTuple& t, double r) {
  if (!(r > 0.0)) throw std::domain_error("modulus_asymptote: r must be positive");
  double h = t.sigma * std::log(r);
  for (int j = 0; j < t.N; ++j)
    h += t.c[static_cast<std::size_t>(j)] * std::pow(r, double(j - t.N));
  return std::exp(h);
}

// pi arg(z) |z|^{-N} (b_0 + b_1 |z| + ... + b_N |z|^N)
inline double argument_asymptote(const AsymptoticTuple& t, std::complex<double> z) {
  if (z == std::complex<double>{}) throw std::domain_error("argument_asymptote: z = 0");
  const double r = std::abs(z);
  double s = 0.0;
  for (int j = t.N; j >= 0; --j)
    s = s * r + t.b[static_cast<std::size_t>(j)];
  return std::numbers::pi * std::arg(z) * s * std::pow(r, double(-t.N));
}

// --- Faa di Bruno expansion of F^(k)/F -------------------------------------

struct LogMonomial {
  double coeff = 0.0;
  int zpow = 0;     // power of z
  int logpow = 0;   // power of Log z
};

struct FDerivativeExpansion {
  int k = 0;
  std::vector<LogMonomial> terms;  // sorted by ascending zpow

  template <class R>
  std::complex<R> eval(const std::complex<R>& z) const {
    detail::check_h_domain(z);
    const std::complex<R> lz = std::log(z);
    std::complex<R> acc{};
    for (const auto& m : terms) {
      std::complex<R> term = std::complex<R>(R(m.coeff)) * pow_int(z, m.zpow);
      for (int i = 0; i < m.logpow; ++i) term *= lz;
      acc += term;
    }
    return acc;
  }
};

namespace detail {

using LaurentPoly = std::map<int, double>;  // z-power -> coefficient

inline LaurentPoly lp_mul(const LaurentPoly& f, const LaurentPoly& g) {
  LaurentPoly out;
  for (const auto& [pf, cf] : f)
    for (const auto& [pg, cg] : g) out[pf + pg] += cf * cg;
  return out;
}

// (1/l!) H^{(l)} for l >= 1: a Laurent polynomial in z (no log terms).
inline LaurentPoly h_deriv_over_factorial(const AsymptoticTuple& t, int l) {
  LaurentPoly out;
  double lfact = 1.0;
  for (int i = 2; i <= l; ++i) lfact *= double(i);
  for (int j = 0; j < t.N; ++j) {
    double f = 1.0;  // falling factorial (j-N)(j-N-1)...(j-N-l+1)
    for (int i = 0; i < l; ++i) f *= double(j - t.N - i);
    out[j - t.N - l] += t.c[static_cast<std::size_t>(j)] * f / lfact;
  }
  // sigma log z contributes sigma (-1)^{l-1} (l-1)! z^{-l}
  double lm1fact = 1.0;
  for (int i = 2; i <= l - 1; ++i) lm1fact *= double(i);
  out[-l] += t.sigma * ((l % 2) ? 1.0 : -1.0) * lm1fact / lfact;
  return out;
}

template <class Fn>
void enumerate_partitions(int l, int remaining, std::vector<int>& j, const Fn& fn) {
  if (l == 0) {
    if (remaining == 0) fn(j);
    return;
  }
  for (int jl = 0; jl * l <= remaining; ++jl) {
    j[static_cast<std::size_t>(l - 1)] = jl;
    enumerate_partitions(l - 1, remaining - jl * l, j, fn);
  }
  j[static_cast<std::size_t>(l - 1)] = 0;
}

}  // namespace detail

// Exact expansion of F^(k)/F as a polynomial in z^{-1}:
//   sum over (j_1..j_k) with 1 j_1 + ... + k j_k = k of
//   k!/(j_1! ... j_k!) prod_l ((1/l!) H^{(l)})^{j_l}.
inline FDerivativeExpansion faa_di_bruno(const HFunction& h, int k) {
  if (k < 1) throw std::domain_error("faa_di_bruno: k must be >= 1");
  if (k > 25) throw std::domain_error("faa_di_bruno: k too large for exact double factorials");
  const auto& t = h.tuple;

  std::vector<detail::LaurentPoly> hd(static_cast<std::size_t>(k) + 1);
  for (int l = 1; l <= k; ++l) hd[static_cast<std::size_t>(l)] = detail::h_deriv_over_factorial(t, l);

  double kfact = 1.0;
  for (int i = 2; i <= k; ++i) kfact *= double(i);

  detail::LaurentPoly total;
  std::vector<int> j(static_cast<std::size_t>(k), 0);
  detail::enumerate_partitions(k, k, j, [&](const std::vector<int>& jj) {
    double multinom = kfact;
    detail::LaurentPoly prod{{0, 1.0}};
    for (int l = 1; l <= k; ++l) {
      const int jl = jj[static_cast<std::size_t>(l - 1)];
      for (int i = 2; i <= jl; ++i) multinom /= double(i);
      for (int i = 0; i < jl; ++i) prod = detail::lp_mul(prod, hd[static_cast<std::size_t>(l)]);
    }
    for (const auto& [p, c] : prod) total[p] += multinom * c;
  });

  FDerivativeExpansion out;
  out.k = k;
  for (const auto& [p, c] : total)
    if (c != 0.0) out.terms.push_back(LogMonomial{c, p, 0});
  return out;
}

// The coefficient of the most negative power z^{-k(N+1)}: (-N c_0)^k.
inline double f_derivative_leading_constant(const AsymptoticTuple& t, int k) {
  return std::pow(-double(t.N) * t.c[0], double(k));
}

template <class R>
std::complex<R> eval_F_derivative(const AsymptoticTuple& t, int k, const std::complex<R>& z) {
  auto expansion = faa_di_bruno(make_h(t), k);
  return eval_F(t, z) * expansion.eval(z);
}

template <class R>
std::complex<R> eval_F_derivative(const AsymptoticTuple& t, const FDerivativeExpansion& expansion,
                                  const std::complex<R>& z) {
  return eval_F(t, z) * expansion.eval(z);
}

// Leading-order surrogate F(z) (-N c_0)^k z^{-k(N+1)} of the k-th derivative.
template <class R>
std::complex<R> eval_F_derivative_surrogate(const AsymptoticTuple& t, int k,
                                            const std::complex<R>& z) {
  return eval_F(t, z) * std::complex<R>(R(f_derivative_leading_constant(t, k))) *
         pow_int(z, -k * (t.N + 1));
}

// --- inverse-map asymptotics ------------------------------------------------

// Theorem-C surrogate (-pi / (a N log|z|))^{1/N}, evaluated with log|z| as
// stated; real and positive for 0 < |z| < 1.
inline std::complex<double> eval_G(int N, double a, std::complex<double> z) {
  if (z == std::complex<double>{}) throw std::domain_error("eval_G: z = 0");
  if (!(std::abs(z) < 1.0)) throw std::domain_error("eval_G: |z| must be < 1");
  if (N < 1 || !(a > 0.0)) throw std::domain_error("eval_G: need N >= 1 and a > 0");
  const double q = -std::numbers::pi / (a * double(N) * std::log(std::abs(z)));
  return std::pow(q, 1.0 / double(N));
}

// Holomorphic variant with the principal Log in place of log|z|; the two
// agree on the positive reals and asymptotically on the upper half plane.
// This is the function the d_{k,j} expansion differentiates.
template <class R>
std::complex<R> eval_G_principal(int N, double a, const std::complex<R>& z) {
  detail::check_h_domain(z);
  if (!(std::abs(z) < R(1))) throw std::domain_error("eval_G_principal: |z| must be < 1");
  if (N < 1 || !(a > 0.0)) throw std::domain_error("eval_G_principal: need N >= 1 and a > 0");
  const std::complex<R> u = -std::complex<R>(R(1)) / std::log(z);
  const R scale = std::pow(detail::const_pi<R>() / (R(a) * R(N)), R(1) / R(N));
  return scale * std::exp(std::log(u) / std::complex<R>(R(N)));
}

struct GDerivativeCoeffs {
  int N = 0;
  int k = 0;
  std::vector<double> d;  // d[j-1] = d_{k,j}, j = 1..k
};

// d_{1,1} = 1/N;  d_{k+1,j} = -k d_{k,j} + (1/N + j - 1) d_{k,j-1},
// from d/dz (-1/log z) = (-1/log z)^2 / z.
inline GDerivativeCoeffs g_derivative_coeffs(int N, int k) {
  if (k < 1) throw std::domain_error("g_derivative_coeffs: k must be >= 1");
  if (N < 1) throw std::domain_error("g_derivative_coeffs: N must be >= 1");
  std::vector<double> d{1.0 / double(N)};
  for (int kk = 1; kk < k; ++kk) {
    std::vector<double> nx(d.size() + 1, 0.0);
    for (std::size_t j = 0; j < nx.size(); ++j) {
      const double cur = (j < d.size()) ? d[j] : 0.0;
      const double prev = (j >= 1) ? d[j - 1] : 0.0;
      nx[j] = -double(kk) * cur + (1.0 / double(N) + double(j)) * prev;
    }
    d = std::move(nx);
  }
  return GDerivativeCoeffs{N, k, std::move(d)};
}

// (pi/(aN))^{1/N} (sum_j d_{k,j} (-1/Log z)^{1/N + j}) z^{-k}: the exact k-th
// derivative of eval_G_principal.
template <class R>
std::complex<R> eval_G_derivative(int N, double a, int k, const std::complex<R>& z) {
  detail::check_h_domain(z);
  if (!(std::abs(z) < R(1))) throw std::domain_error("eval_G_derivative: |z| must be < 1");
  auto co = g_derivative_coeffs(N, k);
  const std::complex<R> u = -std::complex<R>(R(1)) / std::log(z);
  const std::complex<R> lu = std::log(u);
  std::complex<R> acc{};
  for (int j = 1; j <= k; ++j)
    acc += std::complex<R>(R(co.d[static_cast<std::size_t>(j - 1)])) *
           std::exp(lu * std::complex<R>(R(1) / R(N) + R(j)));
  const R scale = std::pow(detail::const_pi<R>() / (R(a) * R(N)), R(1) / R(N));
  return scale * acc * pow_int(z, -k);
}

// Leading surrogate d_{k,1} (pi/(aN))^{1/N} (-1/Log z)^{1/N+1} z^{-k}.
template <class R>
std::complex<R> eval_G_derivative_surrogate(int N, double a, int k, const std::complex<R>& z) {
  detail::check_h_domain(z);
  auto co = g_derivative_coeffs(N, k);
  const std::complex<R> u = -std::complex<R>(R(1)) / std::log(z);
  const R scale = std::pow(detail::const_pi<R>() / (R(a) * R(N)), R(1) / R(N));
  return scale * std::complex<R>(R(co.d[0])) *
         std::exp(std::log(u) * std::complex<R>(R(1) / R(N) + R(1))) * pow_int(z, -k);
}

// --- closed form of the modulus integral ------------------------------------

// h(r) = -pi int_r^delta dt / (t angle(t)) evaluated from the term-wise
// antiderivative of -pi angle^{-1}(t)/t, using every stored b_j.
template <class R = double>
R h_closed_form(const AsymptoticTuple& t, R r, R delta) {
  using std::log;
  if (!(R(0) < r && r < delta)) throw std::domain_error("h_closed_form: need 0 < r < delta");
  const R pi = detail::const_pi<R>();
  auto tail = TruncatedSeries<R>::zero(static_cast<int>(t.b.size()));
  for (std::size_t j = 0; j < t.b.size(); ++j) tail.c[j] = -pi * R(t.b[j]);
  LaurentSeries<R> integrand(-t.N - 1, std::move(tail));
  auto [anti, log_coeff] = antiderivative_with_log(integrand);
  const R at_delta = eval_at(anti, delta) + log_coeff * log(delta);
  const R at_r = eval_at(anti, r) + log_coeff * log(r);
  return at_delta - at_r;
}

}  // namespace cuspmap
