// Finite q-products, certified enclosures of the infinite products behind the
// partition measures, and their exact power-series expansions in u.
#pragma once

#include "classchain/interval.hpp"
#include "classchain/rational.hpp"
#include "classchain/series.hpp"

namespace classchain {

// prod_{l=1}^{m} (q^{2l} - 1); the empty product (m = 0) is 1.  Requires q > 1.
Rational finite_q_product(const Rational& q, int m);

// Certified enclosure of prod_{r>=1} (1 - u2 / q^{2r-1}) of width <= eps.
// Requires 0 <= u2 <= 1, q > 1, u2/q < 1, eps > 0.
Interval infinite_product_enclosure(const Rational& u2, const Rational& q, const Rational& eps);

// Exact series (in u) of prod_{r>=1} (1 - u^2 / q^{2r-1}) through u^{2N}:
// the u^{2n} coefficient is (-q)^n / ((q^{2n}-1)...(q^2-1)), odd ones vanish.
PowerSeries product_series_coefficients(const Rational& q, int N);

// Exact long division by (1-u) or (1-u^2); `power` selects the exponent.
PowerSeries series_divide_one_minus(const PowerSeries& s, int power);

// Certified enclosure of prod_{r>=1} (1 + u/(-q)^r) of width <= eps
// (the unitary measure prefactor).  Requires 0 <= u <= 1 and q > 1, u/q < 1.
Interval alternating_product_enclosure(const Rational& u, const Rational& q, const Rational& eps);

// Exact series of the same product: the u^m coefficient is
// 1 / (((-q)^m - 1) ((-q)^{m-1} - 1) ... ((-q) - 1)).
PowerSeries alternating_product_series(const Rational& q, int N);

}  // namespace classchain
