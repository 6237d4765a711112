#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>
#include <vector>

#include "cuspmap/series.hpp"

using namespace cuspmap;
using Catch::Approx;

namespace {

using RS = TruncatedSeries<double>;

RS make(std::vector<double> c) { return RS(std::move(c)); }

// Independent oracle: long division of 1 by (a_N + a_{N+1} u + ...), digit by
// digit, no reuse of mul_inverse.
std::vector<double> long_division_inverse(const std::vector<double>& a, int n_ord, int len) {
  std::vector<double> rem(a.begin() + n_ord, a.end());
  rem.resize(static_cast<std::size_t>(len) + rem.size(), 0.0);
  std::vector<double> q(static_cast<std::size_t>(len), 0.0);
  std::vector<double> cur(rem.size(), 0.0);
  cur[0] = 1.0;  // dividend
  for (int j = 0; j < len; ++j) {
    const double d = cur[static_cast<std::size_t>(j)] / rem[0];
    q[static_cast<std::size_t>(j)] = d;
    for (std::size_t k = 0; j + k < cur.size() && k < rem.size(); ++k)
      cur[static_cast<std::size_t>(j) + k] -= d * rem[k];
  }
  return q;
}

// Independent oracle: plain polynomial substitution f(g(t)) with full-length
// convolutions, truncated only at the end.
std::vector<double> brute_compose(const std::vector<double>& f, const std::vector<double>& g, int len) {
  std::vector<double> out(static_cast<std::size_t>(len), 0.0);
  std::vector<double> gp{1.0};
  for (std::size_t k = 0; k < f.size(); ++k) {
    for (std::size_t i = 0; i < gp.size() && i < out.size(); ++i) out[i] += f[k] * gp[i];
    std::vector<double> nx(std::min(gp.size() + g.size() - 1, static_cast<std::size_t>(len)), 0.0);
    for (std::size_t i = 0; i < gp.size(); ++i)
      for (std::size_t j = 0; j < g.size() && i + j < nx.size(); ++j) nx[i + j] += gp[i] * g[j];
    gp = std::move(nx);
  }
  return out;
}

double max_abs_coeff(const RS& s, int from = 0) {
  double m = 0.0;
  for (int j = from; j < s.trunc(); ++j) m = std::max(m, std::abs(s.c[static_cast<std::size_t>(j)]));
  return m;
}

}  // namespace

TEST_CASE("ord and lc") {
  CHECK(ord(make({0, 1, -1})) == 1);                      // t - t^2
  CHECK(ord(make({0, 0, 0, 0})) == std::nullopt);         // zero up to truncation
  CHECK(ord(make({0, 0, 0, 0, 3, 0, 0, 1})) == 4);        // 3t^4 + t^7
  CHECK(lc(make({0, 0, 0, 0, 3, 0, 0, 1})) == 3.0);
  CHECK(lc(make({0, 1, -1})) == 1.0);
  CHECK_THROWS_AS(lc(make({0, 0})), std::domain_error);
}

TEST_CASE("ring operations") {
  auto t = RS::identity(8);
  auto t2 = mul(t, t);
  CHECK(t2.c[2] == 1.0);
  CHECK(ord(t2) == 2);

  // (t - t^2) + t^2 = t
  auto s = add(make({0, 1, -1}), make({0, 0, 1}));
  CHECK(s.c[1] == 1.0);
  CHECK(s.c[2] == 0.0);

  // (1 - t) * (1 + t + t^2 + ...) = 1 + O(t^M)
  std::vector<double> geo(12, 1.0);
  auto prod = mul(make({1, -1}), make(geo));
  CHECK(prod.c[0] == 1.0);
  CHECK(max_abs_coeff(prod, 1) == 0.0);

  // ord(mul(f,g)) = ord(f) + ord(g)
  auto f = make({0, 0, 2, 1});
  auto g = make({0, 3, 1, 0, 0, 5});
  CHECK(ord(mul(f, g)) == 3);
}

TEST_CASE("mul truncation propagation is sharp") {
  // f known to t^3 with ord 2, g known to t^5 with ord 1:
  // product determined through min(4+1, 6+2) - 1 = t^4.
  auto f = make({0, 0, 1, 1});
  auto g = make({0, 1, 0, 0, 1, 1});
  auto p = mul(f, g);
  CHECK(p.trunc() == 5);
  CHECK(p.c[3] == 1.0);
  CHECK(p.c[4] == 1.0);
}

TEST_CASE("mul_inverse matches the long-division oracle") {
  SECTION("t - t^2 gives the geometric tail") {
    auto inv = mul_inverse(make({0, 1, -1, 0, 0, 0, 0, 0}));
    CHECK(inv.base == -1);
    REQUIRE(inv.tail.trunc() == 7);
    for (int j = 0; j < 7; ++j) CHECK(inv.tail.c[static_cast<std::size_t>(j)] == Approx(1.0));
  }
  SECTION("monomial a t^N") {
    auto inv = mul_inverse(RS::monomial(4.0, 3, 9));
    CHECK(inv.base == -3);
    CHECK(inv.tail.c[0] == Approx(0.25));
    CHECK(max_abs_coeff(inv.tail, 1) == 0.0);
  }
  SECTION("arcsin truncated to t^5") {
    auto a = arcsin_series(6);  // t + t^3/6 + 3 t^5/40
    auto inv = mul_inverse(a);
    CHECK(inv.base == -1);
    REQUIRE(inv.tail.trunc() == 5);
    CHECK(inv.tail.c[0] == Approx(1.0));
    CHECK(inv.tail.c[1] == 0.0);
    CHECK(inv.tail.c[2] == Approx(-1.0 / 6.0));
    CHECK(inv.tail.c[3] == 0.0);
    CHECK(inv.tail.c[4] == Approx(-17.0 / 360.0));
    auto q = long_division_inverse(a.c, 1, 5);
    for (int j = 0; j < 5; ++j)
      CHECK(inv.tail.c[static_cast<std::size_t>(j)] == Approx(q[static_cast<std::size_t>(j)]).margin(1e-15));
  }
  SECTION("rejects the zero series") {
    CHECK_THROWS_AS(mul_inverse(make({0, 0, 0})), std::domain_error);
  }
}

TEST_CASE("compose") {
  // f = t^2, g = t + t^2 -> t^2 + 2 t^3 + t^4
  auto r = compose(make({0, 0, 1, 0, 0}), make({0, 1, 1, 0, 0}));
  CHECK(r.c[2] == Approx(1.0));
  CHECK(r.c[3] == Approx(2.0));
  CHECK(r.c[4] == Approx(1.0));

  // identity is neutral
  auto f = make({0.5, 1, -2, 3, 0.25});
  auto id = RS::identity(5);
  auto fi = compose(f, id);
  for (int j = 0; j < 5; ++j)
    CHECK(fi.c[static_cast<std::size_t>(j)] == Approx(f.c[static_cast<std::size_t>(j)]).margin(1e-16));

  // arctan(t - t^3/2) = t - (5/6) t^3 + (7/10) t^5 + ...
  auto u = make({0, 1, 0, -0.5, 0, 0});
  auto at = compose(arctan_series(6), u);
  CHECK(at.c[1] == Approx(1.0));
  CHECK(at.c[2] == 0.0);
  CHECK(at.c[3] == Approx(-5.0 / 6.0));
  CHECK(at.c[4] == 0.0);
  CHECK(at.c[5] == Approx(0.7));

  // against the brute-force substitution oracle
  auto bf = brute_compose(arctan_series(6).c, u.c, 6);
  for (int j = 0; j < 6; ++j)
    CHECK(at.c[static_cast<std::size_t>(j)] == Approx(bf[static_cast<std::size_t>(j)]).margin(1e-15));

  CHECK_THROWS_AS(compose(f, make({1, 1})), std::domain_error);
}

TEST_CASE("revert") {
  auto id = revert(RS::identity(6));
  CHECK(id.c[1] == Approx(1.0));
  CHECK(max_abs_coeff(id, 2) == 0.0);

  auto half = revert(RS::monomial(2.0, 1, 6));
  CHECK(half.c[1] == Approx(0.5));

  // revert(t + t^2) = t - t^2 + 2t^3 - 5t^4 + 14t^5 - 42t^6 + 132t^7
  auto g = revert(make({0, 1, 1, 0, 0, 0, 0, 0}));
  const double want[] = {0, 1, -1, 2, -5, 14, -42, 132};
  for (int j = 0; j < 8; ++j)
    CHECK(g.c[static_cast<std::size_t>(j)] == Approx(want[j]).margin(1e-12));

  // round trip
  auto rt = compose(make({0, 1, 1, 0, 0, 0, 0, 0}), g);
  CHECK(rt.c[1] == Approx(1.0));
  CHECK(rt.c[0] == 0.0);
  CHECK(max_abs_coeff(rt, 2) < 1e-12);

  CHECK_THROWS_AS(revert(make({0, 0, 1})), std::domain_error);
  CHECK_THROWS_AS(revert(make({1, 1})), std::domain_error);
}

TEST_CASE("derivative") {
  auto d = derivative(make({0, 1, -1}));
  CHECK(d.c[0] == Approx(1.0));
  CHECK(d.c[1] == Approx(-2.0));
  CHECK(d.trunc() == 2);

  auto dc = derivative(RS::constant(5.0, 4));
  CHECK(max_abs_coeff(dc) == 0.0);

  // Laurent: d/dt t^{-1} = -t^{-2}
  auto l = LaurentSeries<double>(-1, RS::constant(1.0, 3));
  auto dl = derivative(l);
  CHECK(dl.base == -2);
  CHECK(dl.tail.c[0] == Approx(-1.0));
}

TEST_CASE("antiderivative_with_log") {
  SECTION("pure power") {
    auto l = LaurentSeries<double>(-2, RS::constant(3.0, 1));
    auto [a, logc] = antiderivative_with_log(l);
    CHECK(logc == 0.0);
    CHECK(a.base == -1);
    CHECK(a.tail.c[0] == Approx(-3.0));
  }
  SECTION("pure log term") {
    auto l = LaurentSeries<double>(-1, RS::constant(2.5, 1));
    auto [a, logc] = antiderivative_with_log(l);
    CHECK(logc == Approx(2.5));
    CHECK(a.is_zero());
  }
  SECTION("mixed, term-wise") {
    // t^{-2} (b0 + b1 t + b2 t^2) -> -b0 t^{-1} + b2 t, log coeff b1
    auto l = LaurentSeries<double>(-2, make({2.0, 7.0, 3.0}));
    auto [a, logc] = antiderivative_with_log(l);
    CHECK(logc == Approx(7.0));
    CHECK(a.coeff(-1) == Approx(-2.0));
    CHECK(a.coeff(0) == 0.0);
    CHECK(a.coeff(1) == Approx(3.0));
  }
  SECTION("derivative undoes it, log coefficient included") {
    auto l = LaurentSeries<double>(-3, make({1.5, -2.0, 0.5, 4.0, -1.0}));
    auto [a, logc] = antiderivative_with_log(l);
    auto d = derivative(a);
    for (int e = l.base; e < l.top_exponent(); ++e) {
      const double want = l.coeff(e);
      const double got = (e == -1) ? logc : (e >= d.top_exponent() ? 0.0 : d.coeff(e));
      CHECK(got == Approx(want).margin(1e-14));
    }
  }
}

TEST_CASE("eval_at") {
  CHECK(eval_at(make({0, 1, -1}), 0.1) == Approx(0.09));
  auto l = LaurentSeries<double>(-1, make({1.0, 1.0}));  // 1/t + 1
  CHECK(eval_at(l, 2.0) == Approx(1.5));
  std::complex<double> z{0.1, 0.1};
  auto v = eval_at(make({0, 1, -1}), z);
  auto want = z - z * z;
  CHECK(std::abs(v - want) < 1e-16);
  CHECK_THROWS_AS(eval_at(l, std::complex<double>(0.0, 0.0)), std::domain_error);
}

TEST_CASE("elementary generators") {
  auto at = arctan_series(8);
  CHECK(at.c[1] == 1.0);
  CHECK(at.c[3] == Approx(-1.0 / 3.0));
  CHECK(at.c[5] == Approx(0.2));
  auto as = arcsin_series(8);
  CHECK(as.c[3] == Approx(1.0 / 6.0));
  CHECK(as.c[5] == Approx(3.0 / 40.0));
  CHECK(as.c[7] == Approx(15.0 / 336.0));
  // sin^2 + cos^2 = 1
  auto s2 = mul(sin_series(10), sin_series(10));
  auto c2 = mul(cos_series(10), cos_series(10));
  auto one = add(s2, c2);
  CHECK(one.c[0] == Approx(1.0));
  CHECK(max_abs_coeff(one, 1) < 1e-16);
  // sqrt(1 + 2t + t^2) = 1 + t
  auto r = sqrt_series(make({1, 2, 1, 0, 0, 0}));
  CHECK(r.c[0] == Approx(1.0));
  CHECK(r.c[1] == Approx(1.0));
  CHECK(max_abs_coeff(r, 2) < 1e-15);
}

TEST_CASE("randomized inverse and reversion round trips") {
  std::mt19937 rng(20240517u);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_int_distribution<int> ord_pick(0, 3);

  for (int iter = 0; iter < 60; ++iter) {
    const int m = 14;
    const int n0 = ord_pick(rng);
    auto s = RS::zero(m + n0);
    // decaying coefficients keep the inverse well conditioned
    double scale = (uni(rng) > 0 ? 1.0 : -1.0) * (0.5 + 2.0 * std::abs(uni(rng)));
    s.c[static_cast<std::size_t>(n0)] = scale;
    for (int j = n0 + 1; j < s.trunc(); ++j)
      s.c[static_cast<std::size_t>(j)] = uni(rng) * std::pow(0.5, j - n0);

    auto inv = mul_inverse(s);
    auto prod = mul(as_laurent(s), inv);
    CHECK(prod.base == 0);
    CHECK(std::abs(prod.tail.c[0] - 1.0) < 1e-12);
    CHECK(max_abs_coeff(prod.tail, 1) < 1e-12);
  }

  for (int iter = 0; iter < 60; ++iter) {
    const int m = 12;
    auto f = RS::zero(m);
    f.c[1] = (uni(rng) > 0 ? 1.0 : -1.0) * (0.5 + std::abs(uni(rng)));
    for (int j = 2; j < m; ++j) f.c[static_cast<std::size_t>(j)] = uni(rng) * std::pow(0.5, j);
    auto g = revert(f);
    auto fg = compose(f, g);
    auto gf = compose(g, f);
    CHECK(std::abs(fg.c[1] - 1.0) < 1e-12);
    CHECK(max_abs_coeff(fg, 2) < 1e-12);
    CHECK(std::abs(gf.c[1] - 1.0) < 1e-12);
    CHECK(max_abs_coeff(gf, 2) < 1e-12);
  }
}
