#include "classchain/measures.hpp"

#include <stdexcept>

namespace classchain {

void MeasureParams::validate() const {
    if (u <= 0 || u > 1) throw std::invalid_argument("MeasureParams: need 0 < u <= 1");
    if (q <= 1) throw std::invalid_argument("MeasureParams: need q > 1");
}

Interval measure_prefactor(const MeasureParams& p, const Rational& eps) {
    p.validate();
    switch (p.flavor) {
        case Flavor::Sp:
            return infinite_product_enclosure(p.u * p.u, p.q, eps);
        case Flavor::O: {
            const Rational scale = 1 / (1 + p.u);
            return infinite_product_enclosure(p.u * p.u, p.q, eps) * scale;
        }
        case Flavor::U:
            return alternating_product_enclosure(p.u, p.q, eps);
    }
    throw std::logic_error("measure_prefactor: unknown flavor");
}

Rational measure_signed(const SignedPartition& sp, const MeasureParams& p) {
    p.validate();
    if (p.flavor != sp.flavor || p.flavor == Flavor::U)
        throw std::invalid_argument("measure_signed: flavor mismatch");
    if (!admissible(sp.shape, sp.flavor))
        throw std::invalid_argument("measure_signed: inadmissible shape");

    // Denominator q^{(sum lambda'^2 - sum m^2)/2} * prod_i A((z-1)^i),
    // accumulated in half-integral powers of q.
    QPow denom{sum_cols_squared(sp.shape) - sum_mults_squared(sp.shape), Rational(1)};
    for (auto [size, m] : multiplicities(sp.shape)) {
        std::optional<int> sign;
        if (auto it = sp.signs.find(size); it != sp.signs.end()) sign = it->second;
        denom *= (sp.flavor == Flavor::Sp) ? a_sp(size, m, sign, p.q) : a_o(size, m, sign, p.q);
    }
    return pow_rational(p.u, sp.shape.size()) / denom.to_rational(p.q);
}

Rational measure_lumped(const Partition& shape, const MeasureParams& params) {
    params.validate();
    if (params.flavor == Flavor::U)
        throw std::invalid_argument("measure_lumped: flavor must be Sp or O");
    if (!admissible(shape, params.flavor)) return Rational(0);
    Rational total(0);
    for (const auto& sp : sign_assignments(shape, params.flavor))
        total += measure_signed(sp, params);
    return total;
}

QPow lumped_factor(Flavor flavor, int size, int mult, const Rational& q) {
    if (mult == 0) return QPow{};
    if (flavor == Flavor::Sp) {
        if (size % 2 == 1) {
            if (mult % 2 != 0) return QPow{0, Rational(0)};
            return QPow{0, order_sp(mult, q)};
        }
        Rational harmonic = 1 / order_o(mult, q, +1) + 1 / order_o(mult, q, -1);
        return QPow{mult, 1 / harmonic};
    }
    if (flavor == Flavor::O) {
        if (size % 2 == 0) {
            if (mult % 2 != 0) return QPow{0, Rational(0)};
            return QPow{-mult, order_sp(mult, q)};
        }
        Rational harmonic = 1 / order_o(mult, q, +1) + 1 / order_o(mult, q, -1);
        return QPow{0, 1 / harmonic};
    }
    throw std::invalid_argument("lumped_factor: flavor must be Sp or O");
}

Rational measure_lumped_displayed(const Partition& shape, const MeasureParams& params) {
    params.validate();
    if (params.flavor != Flavor::Sp && params.flavor != Flavor::O)
        throw std::invalid_argument("measure_lumped_displayed: flavor must be Sp or O");
    if (!admissible(shape, params.flavor)) return Rational(0);

    const Rational& q = params.q;
    QPow denom{sum_cols_squared(shape) - sum_mults_squared(shape), Rational(1)};
    for (auto [size, m] : multiplicities(shape)) {
        const long long mm = m;
        if (params.flavor == Flavor::Sp) {
            if (size % 2 == 1) {
                // admissibility gives m even here
                denom *= QPow{mm * mm / 2, finite_q_product(q, m / 2)};
            } else if (m % 2 == 0) {
                denom *= QPow{mm * mm / 2 - mm, finite_q_product(q, m / 2)};
            } else {
                denom *= QPow{(mm * mm + 1) / 2, finite_q_product(q, (m - 1) / 2)};
            }
        } else {
            if (size % 2 == 0) {
                denom *= QPow{mm * mm / 2 - mm, finite_q_product(q, m / 2)};
            } else if (m % 2 == 0) {
                denom *= QPow{mm * mm / 2 - 2 * mm, finite_q_product(q, m / 2)};
            } else {
                // Printed branch exponent (m^2-1)/4; the sign-summed value has
                // (m-1)^2/4 instead, so this overstates by q^{(m-1)/2} for m >= 3.
                denom *= QPow{(mm * mm - 1) / 2, finite_q_product(q, (m - 1) / 2)};
            }
        }
    }
    return pow_rational(params.u, shape.size()) / denom.to_rational(q);
}

namespace {

// (1+1/q)(1-1/q^2)...(1+(-1)^{m+1}/q^m) = prod_{j=1}^m (1 - (-1/q)^j)
Rational unitary_mult_factor(const Rational& q, int m) {
    Rational r(1);
    Rational t(1);
    const Rational step = -1 / q;
    for (int j = 1; j <= m; ++j) {
        t *= step;
        r *= 1 - t;
    }
    return r;
}

}  // namespace

Rational measure_unitary(const Partition& shape, const MeasureParams& params) {
    params.validate();
    Rational denom = pow_rational(params.q, sum_cols_squared(shape));
    for (auto [size, m] : multiplicities(shape)) denom *= unitary_mult_factor(params.q, m);
    return pow_rational(params.u, shape.size()) / denom;
}

namespace {

struct PPrimeShape {
    long long u_power;     // exponent of u in the numerator
    long long q_exponent;  // exponent of q in the denominator
    int max_factor;        // denominator factors run over j = 1..max_factor
};

PPrimeShape p_prime_shape(Flavor flavor, int k) {
    const long long m = k / 2;
    PPrimeShape s{};
    if (flavor == Flavor::Sp) {
        if (k % 2 == 0) s = {2 * m, 2 * m * m + m, k};
        else s = {2 * m + 2, 2 * m * m + 3 * m + 1, k};
    } else {
        if (k % 2 == 0) s = {2 * m, 2 * m * m - m, k};
        else s = {2 * m + 1, 2 * m * m + m, k};
    }
    return s;
}

}  // namespace

Rational p_prime(int k, const MeasureParams& p) {
    p.validate();
    if (p.flavor == Flavor::U) throw std::invalid_argument("p_prime: flavor must be Sp or O");
    if (k < 0) throw std::invalid_argument("p_prime: k must be >= 0");
    const auto shape = p_prime_shape(p.flavor, k);
    const Rational u2 = p.u * p.u;
    Rational denom = pow_rational(p.q, shape.q_exponent);
    for (int j = 1; j <= shape.max_factor; ++j) {
        const Rational qj = pow_rational(p.q, -j);
        denom *= (j % 2 == 1) ? Rational(1 - u2 * qj) : Rational(1 - qj);
    }
    return pow_rational(p.u, shape.u_power) / denom;
}

Interval p_column_count(int k, const MeasureParams& p, const Rational& eps) {
    const Rational rat = p_prime(k, p) * (p.flavor == Flavor::O ? 1 / (1 + p.u) : Rational(1));
    if (rat == 0) return Interval::point(Rational(0));
    const Interval pref = infinite_product_enclosure(p.u * p.u, p.q, eps / rat);
    return pref * rat;
}

namespace {

// Upper bound on sum_{a > K} P'(a) by geometric comparison: each denominator
// factor is at least min(1-u^2/q, 1-1/q^2), and the q-exponent grows by at
// least e(K+2)-e(K+1) per step from a = K+1 on.
Rational p_prime_tail_bound(const MeasureParams& p, int K) {
    const Rational u2 = p.u * p.u;
    Rational worst = std::min(Rational(1 - u2 / p.q), Rational(1 - 1 / (p.q * p.q)));
    if (worst <= 0) throw std::domain_error("p_prime_tail_bound: degenerate parameters");
    const Rational B = 1 / worst;

    auto term_bound = [&](int a) {
        const auto shape = p_prime_shape(p.flavor, a);
        return pow_rational(p.u, shape.u_power) * pow_rational(p.q, -shape.q_exponent) *
               pow_rational(B, a);
    };
    // Ratio of consecutive bounds: q^{-(e(a+1)-e(a))} * B * u^{du}; require <= 1/2.
    const auto s1 = p_prime_shape(p.flavor, K + 1);
    const auto s2 = p_prime_shape(p.flavor, K + 2);
    const Rational ratio = pow_rational(p.q, -(s2.q_exponent - s1.q_exponent)) * B;
    if (ratio > Rational(1, 2))
        throw std::domain_error("p_prime_tail_bound: K too small for the geometric bound");
    return 2 * term_bound(K + 1);
}

}  // namespace

bool normalization_check(const MeasureParams& p, const Rational& eps) {
    p.validate();
    if (eps <= 0) throw std::invalid_argument("normalization_check: eps must be positive");
    const Rational scale = (p.flavor == Flavor::O) ? 1 / (1 + p.u) : Rational(1);

    Rational width = eps / 4;
    for (int K = 8; K <= 512; K *= 2, width /= 16) {
        Rational partial(0);
        for (int k = 0; k <= K; ++k) partial += p_prime(k, p);
        Rational tail;
        try {
            tail = p_prime_tail_bound(p, K);
        } catch (const std::domain_error&) {
            continue;
        }
        const Interval pref = infinite_product_enclosure(p.u * p.u, p.q, width);
        const Interval total(pref.lo * partial * scale, pref.hi * (partial + tail) * scale);
        if (total.lo >= 1 - eps && total.hi <= 1 + eps) return true;
        if (total.width() <= eps / 2 && (total.hi < 1 - eps || total.lo > 1 + eps))
            return false;  // certified off by more than eps
    }
    return false;
}

namespace {

// Series (in u) of P'(k) through the given order: the u-power numerator over
// q^{e} times the even-index constant factors, then exact division by each
// (1 - u^2/q^j) with j odd.
PowerSeries p_prime_series(Flavor flavor, int k, const Rational& q, int order) {
    const auto shape = p_prime_shape(flavor, k);
    PowerSeries s(order);
    if (shape.u_power > order) return s;  // identically 0 through this order
    Rational constant = pow_rational(q, -shape.q_exponent);
    for (int j = 2; j <= shape.max_factor; j += 2) constant /= 1 - pow_rational(q, -j);
    s.c[shape.u_power] = constant;
    for (int j = 1; j <= shape.max_factor; j += 2)
        s = divide_one_minus_scaled(s, pow_rational(q, -j), 2);
    return s;
}

}  // namespace

Rational fixed_space_prob_series(Flavor flavor, int n, int k, const Rational& q) {
    if (q <= 1) throw std::invalid_argument("fixed_space_prob_series: requires q > 1");
    if (n < 0) throw std::invalid_argument("fixed_space_prob_series: requires n >= 0");
    if (flavor == Flavor::Sp) {
        const int dim = 2 * n;
        if (k < 0 || k > dim) return Rational(0);
        PowerSeries s = product_series_coefficients(q, n);  // order 2n
        s = s * p_prime_series(Flavor::Sp, k, q, dim);
        s = series_divide_one_minus(s, 2);
        return s.coeff(dim);
    }
    if (flavor == Flavor::O) {
        const int dim = n;
        if (k < 0 || k > dim) return Rational(0);
        PowerSeries s = product_series_coefficients(q, (dim + 1) / 2);
        PowerSeries trimmed(dim);
        for (int i = 0; i <= dim; ++i) trimmed.c[i] = s.coeff(i);
        trimmed = trimmed * p_prime_series(Flavor::O, k, q, dim);
        trimmed = series_divide_one_minus(trimmed, 1);
        const Rational extracted = trimmed.coeff(dim);
        return dim == 0 ? extracted : extracted / 2;
    }
    throw std::invalid_argument("fixed_space_prob_series: flavor must be Sp or O");
}

namespace {

Rational sp_alternating_sum(int terms, int weight_exp_shift, bool shifted_binomial,
                            const Rational& q) {
    // sum_{i=0}^{terms-1} (-1)^i q^{E(i)} / (|Sp(2i,q)| q^{i*weight_exp_shift})
    // with E(i) = i(i-1) as printed or i(i+1) for the corrected convention.
    Rational sum(0);
    for (int i = 0; i < terms; ++i) {
        const long long e = shifted_binomial ? 1LL * i * (i + 1) : 1LL * i * (i - 1);
        Rational term = pow_rational(q, e - 1LL * i * weight_exp_shift) / order_sp(2 * i, q);
        sum += (i % 2 == 0) ? term : -term;
    }
    return sum;
}

}  // namespace

Rational fixed_space_prob_printed(int n, int k, const Rational& q) {
    if (k < 0 || k > n) throw std::invalid_argument("fixed_space_prob_printed: need 0 <= k <= n");
    return sp_alternating_sum(n - k + 1, 2 * k, false, q) / order_sp(2 * k, q);
}

Rational fixed_space_prob_printed_odd(int n, int k, const Rational& q) {
    if (k < 0 || k >= n)
        throw std::invalid_argument("fixed_space_prob_printed_odd: need 0 <= k < n");
    return sp_alternating_sum(n - k, 2 * (k + 1), false, q) /
           (order_sp(2 * k, q) * pow_rational(q, 2 * k + 1));
}

Rational fixed_space_prob_corrected(int n, int dim, const Rational& q) {
    if (dim < 0 || dim > 2 * n) return Rational(0);
    if (dim % 2 == 0) {
        const int k = dim / 2;
        return sp_alternating_sum(n - k + 1, 2 * k, true, q) / order_sp(2 * k, q);
    }
    const int k = (dim - 1) / 2;
    return sp_alternating_sum(n - k, 2 * (k + 1), true, q) /
           (order_sp(2 * k, q) * pow_rational(q, 2 * k + 1));
}

Rational isometry_prob_unitary(int n, int s, int t, const Rational& q) {
    if (s < 0 || t < 0 || s + 2 * t > n)
        throw std::invalid_argument("isometry_prob_unitary: requires s + 2t <= n");
    // [u^n] (1/(1-u)) sum over shapes with lambda'_1 = s+t, lambda'_2 = t of
    // the unitary measure; G[m] below is [u^m] of prefactor/(1-u).
    PowerSeries G = series_divide_one_minus(alternating_product_series(q, n), 1);
    MeasureParams params{Rational(1), q, Flavor::U};
    Rational total(0);
    for (const auto& tall : partitions_with_parts(t, 2, n - s)) {
        std::vector<int> parts = tall.parts();
        parts.insert(parts.end(), s, 1);
        const Partition lambda{parts};
        total += measure_unitary(lambda, params) * G.coeff(n - static_cast<int>(lambda.size()));
    }
    return total;
}

namespace {

Rational unitary_alternating_sum(int terms, int t, const Rational& q) {
    // sum_{i=0}^{terms-1} (-1/q)^{(t+1)i} (-1/q)^{binom(i,2)} / F(i)
    Rational sum(0);
    const Rational step = -1 / q;
    for (int i = 0; i < terms; ++i) {
        const long long e = 1LL * (t + 1) * i + 1LL * i * (i - 1) / 2;
        sum += pow_rational(step, e) / unitary_mult_factor(q, i);
    }
    return sum;
}

}  // namespace

Rational isometry_prob_unitary_printed(int n, int s, int t, const Rational& q) {
    if (s < 0 || t < 0 || s + 2 * t > n)
        throw std::invalid_argument("isometry_prob_unitary_printed: requires s + 2t <= n");
    const int terms = n - 2 * s - t + 1;
    if (terms <= 0) return Rational(0);
    Rational denom = pow_rational(q, 1LL * s * s + 2LL * s * t) * unitary_mult_factor(q, s) *
                     unitary_mult_factor(q, t);
    return unitary_alternating_sum(terms, t, q) / denom;
}

Rational isometry_prob_unitary_corrected(int n, int s, int t, const Rational& q) {
    if (s < 0 || t < 0 || s + 2 * t > n)
        throw std::invalid_argument("isometry_prob_unitary_corrected: requires s + 2t <= n");
    Rational denom = pow_rational(q, 1LL * s * s + 2LL * s * t + 2LL * t * t) *
                     unitary_mult_factor(q, s) * unitary_mult_factor(q, t);
    return unitary_alternating_sum(n - s - 2 * t + 1, t, q) / denom;
}

namespace {

// Certified enclosure of prod_{r>=0} 1/(1 + q^{-(2r+1)}).
Interval odd_reciprocal_product(const Rational& q, const Rational& eps) {
    const Rational geom = 1 / (1 - pow_rational(q, -2));
    int R = 8;
    for (;;) {
        const Rational S = pow_rational(q, -(2LL * R + 3)) * geom;
        if (S <= eps) {
            Rational partial(1);
            for (int r = 0; r <= R; ++r) partial /= 1 + pow_rational(q, -(2LL * r + 1));
            return Interval(partial * (1 - S), partial);
        }
        R *= 2;
    }
}

}  // namespace

Interval isometry_limit_printed(int s, int t, const Rational& q, const Rational& eps) {
    if (s < 0 || t < 0 || q <= 1 || eps <= 0)
        throw std::invalid_argument("isometry_limit_printed: bad arguments");
    Rational denom = pow_rational(q, 1LL * s * s + 2LL * s * t) * unitary_mult_factor(q, s);
    for (int l = 1; l <= t; ++l) denom *= 1 - pow_rational(q, -2LL * l);
    const Interval prod = odd_reciprocal_product(q, eps * denom);
    return prod * (1 / denom);
}

Interval isometry_limit_corrected(int s, int t, const Rational& q, const Rational& eps) {
    const Rational shift = pow_rational(q, -2LL * t * t);
    return isometry_limit_printed(s, t, q, eps / shift) * shift;
}

Rational steinberg_unipotent_count(int n, const Rational& q) {
    if (n < 0 || q <= 1) throw std::invalid_argument("steinberg_unipotent_count: bad arguments");
    return pow_rational(q, 2LL * n * n);
}

bool rr_specialization_check(const Rational& q, int N, const Rational& eps) {
    if (q <= 1 || N < 0 || eps <= 0)
        throw std::invalid_argument("rr_specialization_check: bad arguments");

    // (a) term-by-term equality of the two closed forms, tied to the measure.
    MeasureParams at_one{Rational(1), q, Flavor::Sp};
    for (int n = 0; n <= N; ++n) {
        const Rational form1 =
            1 / (pow_rational(q, 1LL * n * n) * finite_q_product(q, n));
        Rational denom2 = pow_rational(q, 2LL * n * n + n);
        for (int l = 1; l <= n; ++l) denom2 *= 1 - pow_rational(q, -2LL * l);
        if (form1 != 1 / denom2) return false;
        const Partition ones(std::vector<int>(2 * n, 1));
        if (form1 != measure_lumped(ones, at_one)) return false;
    }

    // (b) second Rogers-Ramanujan identity at x = 1/q^2.
    const Rational x = pow_rational(q, -2);
    const Rational Dx = 1 - x / (1 - x);  // lower bound for (x;x)_n
    if (Dx <= 0) return false;

    // Left side: partial sum + tail of sum_n x^{n^2+n} / (x;x)_n.
    int NB = 4;
    Rational lhs_tail;
    Rational lhs(0);
    for (;;) {
        lhs = 0;
        Rational pochhammer(1);
        for (int n = 0; n <= NB; ++n) {
            if (n > 0) pochhammer *= 1 - pow_rational(x, n);
            lhs += pow_rational(x, 1LL * n * n + n) / pochhammer;
        }
        lhs_tail = pow_rational(x, 1LL * (NB + 1) * (NB + 2)) / (Dx * (1 - x));
        if (lhs_tail <= eps / 4) break;
        NB *= 2;
    }
    const Interval left(lhs, lhs + lhs_tail);

    // Right side: partial product + multiplicative tail.
    int J = 2;
    Interval right;
    for (;;) {
        const Rational SJ =
            (pow_rational(x, 5LL * J + 7) + pow_rational(x, 5LL * J + 8)) / (1 - pow_rational(x, 5));
        if (SJ < Rational(1, 2)) {
            Rational partial(1);
            for (int j = 0; j <= J; ++j)
                partial /= (1 - pow_rational(x, 5LL * j + 2)) * (1 - pow_rational(x, 5LL * j + 3));
            right = Interval(partial, partial / (1 - SJ));
            if (right.width() <= eps / 4) break;
        }
        J *= 2;
    }

    // Largest possible |LHS - RHS| given the enclosures.
    return std::max(left.hi - right.lo, right.hi - left.lo) <= eps;
}

}  // namespace classchain
