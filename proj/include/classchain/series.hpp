// Truncated power series in u with exact rational coefficients.
#pragma once

#include "classchain/rational.hpp"

#include <stdexcept>
#include <vector>

namespace classchain {

// Coefficients c[0..order]; every operation is exact through the stated order.
struct PowerSeries {
    std::vector<Rational> c;

    PowerSeries() = default;
    explicit PowerSeries(int order) : c(order + 1, Rational(0)) {}

    int order() const { return static_cast<int>(c.size()) - 1; }
    const Rational& coeff(int k) const {
        static const Rational zero(0);
        return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : zero;
    }

    static PowerSeries one(int order) {
        PowerSeries s(order);
        s.c[0] = 1;
        return s;
    }
};

inline PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.order(), b.order()));
    for (int i = 0; i <= r.order(); ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

inline PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.order(), b.order()));
    for (int i = 0; i <= r.order(); ++i)
        for (int j = 0; i + j <= r.order() && j <= b.order(); ++j)
            if (!a.c[i].is_zero()) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

inline PowerSeries operator*(const PowerSeries& a, const Rational& s) {
    PowerSeries r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

// Multiplication by u^k (drops coefficients beyond the order).
inline PowerSeries shift_up(const PowerSeries& a, int k) {
    PowerSeries r(a.order());
    for (int i = k; i <= r.order(); ++i) r.c[i] = a.c[i - k];
    return r;
}

// Exact division by (1 - s*u^k) via the running recurrence
// out[i] = in[i] + s*out[i-k].
inline PowerSeries divide_one_minus_scaled(const PowerSeries& a, const Rational& s, int k) {
    if (k <= 0) throw std::invalid_argument("divide_one_minus_scaled: k must be positive");
    PowerSeries r = a;
    for (int i = k; i <= r.order(); ++i) r.c[i] += s * r.c[i - k];
    return r;
}

}  // namespace classchain
