#pragma once

// Truncated power series and Laurent series over real or complex coefficients.
//
// A TruncatedSeries stores the coefficients of t^0 .. t^{M-1} where M is the
// truncation order; coefficients at exponent >= M are *unknown*, not zero.
// Every operation propagates the truncation pessimistically and never
// fabricates coefficients beyond it.  A LaurentSeries is a TruncatedSeries
// shifted by an integer base exponent, normalized so the tail's constant term
// is nonzero unless the series vanishes up to truncation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cuspmap {

template <class T = double>
struct TruncatedSeries {
  // c[j] = coefficient of t^j; c.size() is the truncation order.
  std::vector<T> c;

  TruncatedSeries() = default;
  explicit TruncatedSeries(std::vector<T> coeffs) : c(std::move(coeffs)) {}

  int trunc() const { return static_cast<int>(c.size()); }

  T coeff(int j) const {
    if (j < 0 || j >= trunc())
      throw std::out_of_range("TruncatedSeries::coeff: exponent outside stored range");
    return c[static_cast<std::size_t>(j)];
  }

  static TruncatedSeries zero(int m) {
    return TruncatedSeries(std::vector<T>(static_cast<std::size_t>(std::max(m, 0)), T{}));
  }
  static TruncatedSeries constant(T a, int m) {
    auto s = zero(m);
    if (m > 0) s.c[0] = a;
    return s;
  }
  // a * t^k
  static TruncatedSeries monomial(T a, int k, int m) {
    auto s = zero(m);
    if (k >= 0 && k < m) s.c[static_cast<std::size_t>(k)] = a;
    return s;
  }
  static TruncatedSeries identity(int m) { return monomial(T{1}, 1, m); }
};

// Least stored exponent with nonzero coefficient; empty when the stored
// prefix vanishes entirely (mirrors ord(0) = infinity).
template <class T>
std::optional<int> ord(const TruncatedSeries<T>& s) {
  for (int j = 0; j < s.trunc(); ++j)
    if (s.c[static_cast<std::size_t>(j)] != T{}) return j;
  return std::nullopt;
}

template <class T>
T lc(const TruncatedSeries<T>& s) {
  auto o = ord(s);
  if (!o) throw std::domain_error("lc: series vanishes up to truncation");
  return s.c[static_cast<std::size_t>(*o)];
}

namespace detail {

template <class R>
R const_pi() {
  using std::atan;
  return R(4) * atan(R(1));
}

// Lower bound on the true order implied by the stored prefix: a series whose
// stored coefficients all vanish is O(t^trunc).
template <class T>
int order_bound(const TruncatedSeries<T>& s) {
  return ord(s).value_or(s.trunc());
}

template <class T>
TruncatedSeries<T> take(const TruncatedSeries<T>& s, int m) {
  m = std::min(m, s.trunc());
  return TruncatedSeries<T>(std::vector<T>(s.c.begin(), s.c.begin() + m));
}
}  // namespace detail

template <class T>
TruncatedSeries<T> add(const TruncatedSeries<T>& f, const TruncatedSeries<T>& g) {
  const int m = std::min(f.trunc(), g.trunc());
  auto out = detail::take(f, m);
  for (int j = 0; j < m; ++j) out.c[static_cast<std::size_t>(j)] += g.c[static_cast<std::size_t>(j)];
  return out;
}

template <class T>
TruncatedSeries<T> sub(const TruncatedSeries<T>& f, const TruncatedSeries<T>& g) {
  const int m = std::min(f.trunc(), g.trunc());
  auto out = detail::take(f, m);
  for (int j = 0; j < m; ++j) out.c[static_cast<std::size_t>(j)] -= g.c[static_cast<std::size_t>(j)];
  return out;
}

template <class T>
TruncatedSeries<T> scalar_mul(T a, const TruncatedSeries<T>& f) {
  auto out = f;
  for (auto& x : out.c) x *= a;
  return out;
}

// Cauchy product.  Output truncation uses the sharp bound
// min(trunc(f)+ord(g), trunc(g)+ord(f)): below it every unknown coefficient
// of one factor pairs with a known-zero coefficient of the other.
template <class T>
TruncatedSeries<T> mul(const TruncatedSeries<T>& f, const TruncatedSeries<T>& g) {
  const int lf = detail::order_bound(f);
  const int lg = detail::order_bound(g);
  const int m = std::min(f.trunc() + lg, g.trunc() + lf);
  auto out = TruncatedSeries<T>::zero(m);
  for (int i = 0; i < f.trunc() && i < m; ++i) {
    const T fi = f.c[static_cast<std::size_t>(i)];
    if (fi == T{}) continue;
    const int jmax = std::min(g.trunc(), m - i);
    for (int j = 0; j < jmax; ++j)
      out.c[static_cast<std::size_t>(i + j)] += fi * g.c[static_cast<std::size_t>(j)];
  }
  return out;
}

template <class T>
TruncatedSeries<T> operator+(const TruncatedSeries<T>& f, const TruncatedSeries<T>& g) { return add(f, g); }
template <class T>
TruncatedSeries<T> operator-(const TruncatedSeries<T>& f, const TruncatedSeries<T>& g) { return sub(f, g); }
template <class T>
TruncatedSeries<T> operator*(const TruncatedSeries<T>& f, const TruncatedSeries<T>& g) { return mul(f, g); }
template <class T>
TruncatedSeries<T> operator*(T a, const TruncatedSeries<T>& f) { return scalar_mul(a, f); }

// f(g(t)) for ord(g) >= 1, up to the exponent both truncations support:
// min(trunc(g), trunc(f)*ord(g)).
template <class T>
TruncatedSeries<T> compose(const TruncatedSeries<T>& f, const TruncatedSeries<T>& g) {
  if (g.trunc() > 0 && g.c[0] != T{})
    throw std::domain_error("compose: ord(g) must be >= 1");
  const int q = std::max(1, detail::order_bound(g));
  const long mf = f.trunc();
  const long cap = std::min<long>(g.trunc(), mf * q);
  const int m = static_cast<int>(std::max<long>(cap, 0));
  auto out = TruncatedSeries<T>::zero(m);
  if (m == 0) return out;
  out.c[0] = f.c[0];
  std::vector<T> gp(static_cast<std::size_t>(m), T{});
  gp[0] = T{1};  // g^0
  for (int k = 1; k < f.trunc(); ++k) {
    if (static_cast<long>(k) * q >= m) break;  // g^k = O(t^m)
    // gp <- gp * g, truncated to m
    std::vector<T> nx(static_cast<std::size_t>(m), T{});
    for (int i = 0; i < m; ++i) {
      const T pi = gp[static_cast<std::size_t>(i)];
      if (pi == T{}) continue;
      const int jmax = std::min(g.trunc(), m - i);
      for (int j = 0; j < jmax; ++j)
        nx[static_cast<std::size_t>(i + j)] += pi * g.c[static_cast<std::size_t>(j)];
    }
    gp = std::move(nx);
    const T fk = f.c[static_cast<std::size_t>(k)];
    if (fk == T{}) continue;
    for (int i = 0; i < m; ++i) out.c[static_cast<std::size_t>(i)] += fk * gp[static_cast<std::size_t>(i)];
  }
  return out;
}

// Compositional inverse of an order-1 series: compose(f, revert(f)) = t.
template <class T>
TruncatedSeries<T> revert(const TruncatedSeries<T>& f) {
  if (f.trunc() < 2 || f.c[0] != T{} || f.c[1] == T{})
    throw std::domain_error("revert: ord(f) must be exactly 1");
  const int m = f.trunc();
  auto g = TruncatedSeries<T>::zero(m);
  g.c[1] = T{1} / f.c[1];
  for (int n = 2; n < m; ++n) {
    auto r = compose(detail::take(f, n + 1), detail::take(g, n + 1));
    g.c[static_cast<std::size_t>(n)] = -r.c[static_cast<std::size_t>(n)] / f.c[1];
  }
  return g;
}

// Term-wise derivative; the truncation drops by one.
template <class T>
TruncatedSeries<T> derivative(const TruncatedSeries<T>& s) {
  const int m = std::max(s.trunc() - 1, 0);
  auto out = TruncatedSeries<T>::zero(m);
  for (int j = 0; j < m; ++j)
    out.c[static_cast<std::size_t>(j)] = T(j + 1) * s.c[static_cast<std::size_t>(j + 1)];
  return out;
}

// Horner evaluation of the stored truncation at a point of type Z (which may
// be wider than the coefficient type: complex, extended precision, ...).
template <class T, class Z>
Z eval_at(const TruncatedSeries<T>& s, const Z& z) {
  Z acc{};
  for (int j = s.trunc() - 1; j >= 0; --j) acc = acc * z + Z(s.c[static_cast<std::size_t>(j)]);
  return acc;
}

template <class T = double>
struct LaurentSeries {
  int base = 0;             // exponent carried by tail.c[0]
  TruncatedSeries<T> tail;  // tail.c[0] != 0 once normalized, unless zero

  LaurentSeries() = default;
  LaurentSeries(int b, TruncatedSeries<T> t) : base(b), tail(std::move(t)) { normalize(); }

  // First exponent about which nothing is known.
  int top_exponent() const { return base + tail.trunc(); }

  void normalize() {
    int k = 0;
    while (k < tail.trunc() && tail.c[static_cast<std::size_t>(k)] == T{}) ++k;
    if (k > 0) {
      tail.c.erase(tail.c.begin(), tail.c.begin() + k);
      base += k;
    }
  }

  bool is_zero() const { return tail.trunc() == 0 || ord(tail) == std::nullopt; }

  // Coefficient of t^e if stored, else 0 for e below base (known zero) and an
  // error above the truncation.
  T coeff(int e) const {
    if (e >= top_exponent())
      throw std::out_of_range("LaurentSeries::coeff: exponent beyond truncation");
    if (e < base) return T{};
    return tail.c[static_cast<std::size_t>(e - base)];
  }
};

template <class T>
LaurentSeries<T> as_laurent(const TruncatedSeries<T>& s) {
  return LaurentSeries<T>(0, s);
}

// Embed a Laurent series with nonnegative exponents back into a plain series.
template <class T>
TruncatedSeries<T> as_truncated(const LaurentSeries<T>& l) {
  LaurentSeries<T> n = l;
  n.normalize();
  if (n.is_zero()) return TruncatedSeries<T>::zero(n.top_exponent());
  if (n.base < 0)
    throw std::domain_error("as_truncated: series has genuinely negative exponents");
  auto out = TruncatedSeries<T>::zero(n.top_exponent());
  for (int j = 0; j < n.tail.trunc(); ++j)
    out.c[static_cast<std::size_t>(n.base + j)] = n.tail.c[static_cast<std::size_t>(j)];
  return out;
}

template <class T>
LaurentSeries<T> mul(const LaurentSeries<T>& f, const LaurentSeries<T>& g) {
  return LaurentSeries<T>(f.base + g.base, mul(f.tail, g.tail));
}

template <class T>
LaurentSeries<T> scalar_mul(T a, const LaurentSeries<T>& l) {
  return LaurentSeries<T>(l.base, scalar_mul(a, l.tail));
}

// Multiplicative inverse of a series with finite order: for
// s = sum_{j>=N} a_j t^j the result is t^{-N} sum b_j t^j with
//   b_0 = 1/a_N,  b_j = -(1/a_N) sum_{k+l=j, l>=1} b_k a_{N+l}.
template <class T>
LaurentSeries<T> mul_inverse(const TruncatedSeries<T>& s) {
  auto o = ord(s);
  if (!o) throw std::domain_error("mul_inverse: series vanishes up to truncation");
  const int n = *o;
  const int len = s.trunc() - n;  // b_0 .. b_{len-1} are determined
  const T a0 = s.c[static_cast<std::size_t>(n)];
  std::vector<T> b(static_cast<std::size_t>(len), T{});
  b[0] = T{1} / a0;
  for (int j = 1; j < len; ++j) {
    T acc{};
    for (int k = 0; k < j; ++k)
      acc += b[static_cast<std::size_t>(k)] * s.c[static_cast<std::size_t>(n + j - k)];
    b[static_cast<std::size_t>(j)] = -acc / a0;
  }
  return LaurentSeries<T>(-n, TruncatedSeries<T>(std::move(b)));
}

template <class T>
LaurentSeries<T> divide(const TruncatedSeries<T>& num, const TruncatedSeries<T>& den) {
  return mul(as_laurent(num), mul_inverse(den));
}

template <class T>
LaurentSeries<T> derivative(const LaurentSeries<T>& l) {
  auto out = TruncatedSeries<T>::zero(l.tail.trunc());
  for (int j = 0; j < l.tail.trunc(); ++j)
    out.c[static_cast<std::size_t>(j)] = T(l.base + j) * l.tail.c[static_cast<std::size_t>(j)];
  return LaurentSeries<T>(l.base - 1, std::move(out));
}

// Term-wise antiderivative.  The coefficient of t^{-1} has no power-law
// antiderivative; it is split off and returned as the log coefficient.
template <class T>
std::pair<LaurentSeries<T>, T> antiderivative_with_log(const LaurentSeries<T>& l) {
  T log_coeff{};
  auto out = TruncatedSeries<T>::zero(l.tail.trunc());
  for (int j = 0; j < l.tail.trunc(); ++j) {
    const int e = l.base + j;
    const T cj = l.tail.c[static_cast<std::size_t>(j)];
    if (e == -1)
      log_coeff = cj;
    else
      out.c[static_cast<std::size_t>(j)] = cj / T(e + 1);
  }
  return {LaurentSeries<T>(l.base + 1, std::move(out)), log_coeff};
}

// z^e by repeated multiplication (exact power arithmetic for integer e).
template <class Z>
Z pow_int(Z z, int e) {
  const bool neg = e < 0;
  unsigned long n = neg ? static_cast<unsigned long>(-static_cast<long>(e)) : static_cast<unsigned long>(e);
  Z acc = Z(1), base = z;
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return neg ? Z(1) / acc : acc;
}

template <class T, class Z>
Z eval_at(const LaurentSeries<T>& l, const Z& z) {
  if (l.base < 0 && z == Z{})
    throw std::domain_error("eval_at: z = 0 with negative base exponent");
  return eval_at(l.tail, z) * pow_int(z, l.base);
}

// --- elementary coefficient generators ------------------------------------

inline TruncatedSeries<double> arctan_series(int m) {
  auto s = TruncatedSeries<double>::zero(m);
  for (int k = 0; 2 * k + 1 < m; ++k)
    s.c[static_cast<std::size_t>(2 * k + 1)] = (k % 2 ? -1.0 : 1.0) / double(2 * k + 1);
  return s;
}

inline TruncatedSeries<double> arcsin_series(int m) {
  auto s = TruncatedSeries<double>::zero(m);
  double r = 1.0;  // (2k)! / (4^k (k!)^2) by the ratio recurrence
  for (int k = 0; 2 * k + 1 < m; ++k) {
    if (k > 0) r *= double(2 * k - 1) / double(2 * k);
    s.c[static_cast<std::size_t>(2 * k + 1)] = r / double(2 * k + 1);
  }
  return s;
}

inline TruncatedSeries<double> sin_series(int m) {
  auto s = TruncatedSeries<double>::zero(m);
  double f = 1.0;
  for (int k = 0; 2 * k + 1 < m; ++k) {
    if (k > 0) f /= double(2 * k) * double(2 * k + 1);
    s.c[static_cast<std::size_t>(2 * k + 1)] = (k % 2 ? -f : f);
  }
  return s;
}

inline TruncatedSeries<double> cos_series(int m) {
  auto s = TruncatedSeries<double>::zero(m);
  double f = 1.0;
  for (int k = 0; 2 * k < m; ++k) {
    if (k > 0) f /= double(2 * k - 1) * double(2 * k);
    s.c[static_cast<std::size_t>(2 * k)] = (k % 2 ? -f : f);
  }
  return s;
}

// Square root of a series with positive constant term, branch with positive
// leading coefficient:  r_0 = sqrt(a_0),  r_i = (a_i - sum r_j r_{i-j}) / (2 r_0).
inline TruncatedSeries<double> sqrt_series(const TruncatedSeries<double>& s) {
  if (s.trunc() == 0 || !(s.c[0] > 0.0))
    throw std::domain_error("sqrt_series: constant term must be positive");
  const int m = s.trunc();
  auto r = TruncatedSeries<double>::zero(m);
  r.c[0] = std::sqrt(s.c[0]);
  for (int i = 1; i < m; ++i) {
    double acc = s.c[static_cast<std::size_t>(i)];
    for (int j = 1; j < i; ++j)
      acc -= r.c[static_cast<std::size_t>(j)] * r.c[static_cast<std::size_t>(i - j)];
    r.c[static_cast<std::size_t>(i)] = acc / (2.0 * r.c[0]);
  }
  return r;
}

}  // namespace cuspmap
