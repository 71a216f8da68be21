#include "classchain/exactnum.hpp"

#include <stdexcept>

namespace classchain {

Rational finite_q_product(const Rational& q, int m) {
    if (q <= 1) throw std::domain_error("finite_q_product: requires q > 1");
    if (m < 0) throw std::domain_error("finite_q_product: requires m >= 0");
    Rational r(1);
    Rational q2 = q * q;
    Rational p(1);
    for (int l = 1; l <= m; ++l) {
        p *= q2;  // p = q^{2l}
        r *= p - 1;
    }
    return r;
}

Interval infinite_product_enclosure(const Rational& u2, const Rational& q, const Rational& eps) {
    if (u2 < 0 || u2 > 1 || q <= 1 || u2 >= q || eps <= 0)
        throw std::domain_error("infinite_product_enclosure: parameters out of range");
    if (u2 == 0) return Interval::point(Rational(1));

    // Partial product over r <= R, tail factors in [1 - T_R, 1] with
    // T_R = u2 * q^{-(2R+1)} / (1 - q^{-2}) from the geometric sum bound.
    const Rational geom = 1 / (1 - pow_rational(q, -2));
    int R = 8;
    for (;;) {
        Rational tail = u2 * pow_rational(q, -(2LL * R + 1)) * geom;
        if (tail <= eps) {
            Rational partial(1);
            for (int r = 1; r <= R; ++r) partial *= 1 - u2 * pow_rational(q, 1 - 2LL * r);
            Rational lo = partial * (1 - tail);
            // width = partial*tail <= tail <= eps since partial <= 1
            return Interval(lo, partial);
        }
        R *= 2;
        if (R > (1 << 24)) throw std::domain_error("infinite_product_enclosure: cannot reach eps");
    }
}

PowerSeries product_series_coefficients(const Rational& q, int N) {
    if (q <= 1) throw std::domain_error("product_series_coefficients: requires q > 1");
    PowerSeries s(2 * N);
    Rational denom(1);
    Rational q2n(1);
    const Rational q2 = q * q;
    Rational sign_pow(1);
    s.c[0] = 1;
    for (int n = 1; n <= N; ++n) {
        q2n *= q2;                // q^{2n}
        denom *= q2n - 1;         // (q^2-1)...(q^{2n}-1)
        sign_pow *= -q;           // (-q)^n
        s.c[2 * n] = sign_pow / denom;
    }
    return s;
}

PowerSeries series_divide_one_minus(const PowerSeries& s, int power) {
    if (power != 1 && power != 2)
        throw std::invalid_argument("series_divide_one_minus: power must be 1 or 2");
    return divide_one_minus_scaled(s, Rational(1), power);
}

Interval alternating_product_enclosure(const Rational& u, const Rational& q, const Rational& eps) {
    if (u < 0 || u > 1 || q <= 1 || u >= q || eps <= 0)
        throw std::domain_error("alternating_product_enclosure: parameters out of range");
    if (u == 0) return Interval::point(Rational(1));

    // Factors 1 + u*(-1)^r/q^r lie in (0, 2); past R the product is within
    // [1 - S, 1 + 2S] for S = sum_{r>R} u/q^r, provided S <= 1/2.
    const Rational geom = 1 / (q - 1);
    int R = 8;
    for (;;) {
        Rational S = u * pow_rational(q, -R) * geom;
        if (3 * S <= eps && 2 * S <= 1) {
            Rational partial(1);
            for (int r = 1; r <= R; ++r) {
                Rational f = u * pow_rational(q, -r);
                partial *= (r % 2 == 1) ? Rational(1 - f) : Rational(1 + f);
            }
            // partial <= 1 here: the r=1 factor dominates its successor pairwise.
            return Interval(partial * (1 - S), partial * (1 + 2 * S));
        }
        R *= 2;
        if (R > (1 << 24)) throw std::domain_error("alternating_product_enclosure: cannot reach eps");
    }
}

PowerSeries alternating_product_series(const Rational& q, int N) {
    if (q <= 1) throw std::domain_error("alternating_product_series: requires q > 1");
    PowerSeries s(N);
    Rational denom(1);
    Rational mqm(1);
    s.c[0] = 1;
    for (int m = 1; m <= N; ++m) {
        mqm *= -q;            // (-q)^m
        denom *= mqm - 1;     // ((-q)-1)...((-q)^m - 1)
        s.c[m] = 1 / denom;
    }
    return s;
}

}  // namespace classchain
