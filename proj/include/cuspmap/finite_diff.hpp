#pragma once

// k-th derivative of an evaluable map by central differences with Richardson
// extrapolation.  Default step 1e-2 |z|, halved four times; every tableau
// entry is a candidate and the one with the smallest error estimate wins
// (Ridders-style selection).  Evaluate with complex<long double> where double
// roundoff would drown the stencil; raise h_scale for maps whose k-th
// derivative is small relative to their value.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cuspmap/series.hpp"

namespace cuspmap {

template <class Z, class F>
Z finite_difference(const F& f, const Z& z, int k, int levels = 5, double h_scale = 1e-2) {
  using R = typename Z::value_type;
  if (k < 1) throw std::domain_error("finite_difference: k must be >= 1");
  if (levels < 2) throw std::domain_error("finite_difference: need at least two levels");

  std::vector<R> binom(static_cast<std::size_t>(k) + 1);
  binom[0] = R(1);
  for (int i = 1; i <= k; ++i)
    binom[static_cast<std::size_t>(i)] =
        binom[static_cast<std::size_t>(i - 1)] * R(k - i + 1) / R(i);

  const auto stencil = [&](R h) -> Z {
    Z acc{};
    for (int i = 0; i <= k; ++i) {
      const R off = R(k) / R(2) - R(i);
      const Z v = f(z + Z(off * h));
      acc += Z(((i % 2) ? -binom[static_cast<std::size_t>(i)] : binom[static_cast<std::size_t>(i)])) * v;
    }
    return acc / pow_int(Z(h), k);
  };

  R h = R(h_scale) * std::abs(z);
  if (!(h > R(0))) throw std::domain_error("finite_difference: zero step at z = 0");

  std::vector<std::vector<Z>> tab;
  Z best{};
  R best_err = std::numeric_limits<R>::infinity();
  for (int m = 0; m < levels; ++m) {
    std::vector<Z> row{stencil(h)};
    R pow4 = R(1);
    for (int j = 1; j <= m; ++j) {
      pow4 *= R(4);
      const Z hi = row[static_cast<std::size_t>(j - 1)];
      const Z lo = tab[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - 1)];
      const Z cur = hi + (hi - lo) / Z(pow4 - R(1));
      const R err = std::abs(cur - hi) + std::abs(cur - lo);
      if (err < best_err) {
        best_err = err;
        best = cur;
      }
      row.push_back(cur);
    }
    tab.push_back(std::move(row));
    h /= R(2);
  }
  return best;
}

}  // namespace cuspmap
