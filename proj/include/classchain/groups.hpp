// Orders of the finite classical groups and the per-part-size class-size
// factors entering the symplectic/orthogonal measures.
#pragma once

#include "classchain/rational.hpp"

#include <optional>
#include <stdexcept>

namespace classchain {

enum class GroupFamily { Sp, O, GL, U };

struct GroupSpec {
    GroupFamily family;
    int dimension = 0;
    Rational q = 0;
    // Required for even-dimensional orthogonal groups; ignored elsewhere.
    std::optional<int> sign;  // +1 or -1
};

// |Sp(2n,q)|, |O^{+-}(d,q)|, |GL(m,q)|, |U(m,q)| as exact rationals in q.
// Unitary dimensions are measured over the quadratic extension of F_q.
Rational group_order(const GroupSpec& spec);

// Convenience forms.
Rational order_sp(int dim, const Rational& q);                 // dim even
Rational order_o(int dim, const Rational& q, int sign);        // sign +1/-1
Rational order_gl(int dim, const Rational& q);
Rational order_u(int dim, const Rational& q);

// coeff * q^{half_exp/2}: products of class-size factors can carry
// half-integral powers of q that only cancel once a whole partition is
// assembled; to_rational asserts the accumulated exponent is integral.
struct QPow {
    long long half_exp = 0;
    Rational coeff = 1;

    QPow() = default;
    QPow(long long he, Rational c) : half_exp(he), coeff(std::move(c)) {}

    QPow& operator*=(const QPow& o) {
        half_exp += o.half_exp;
        coeff *= o.coeff;
        return *this;
    }
    friend QPow operator*(QPow a, const QPow& b) { return a *= b; }

    Rational to_rational(const Rational& q) const {
        if (coeff == 0) return Rational(0);
        if (half_exp % 2 != 0)
            throw std::logic_error("QPow: half-integral power of q did not cancel");
        return coeff * pow_rational(q, half_exp / 2);
    }
};

// Class-size factor at part size i with multiplicity m for the symplectic
// measure: |Sp(m,q)| at odd i, q^{m/2} |O^{sign}(m,q)| at even i; 1 at m = 0.
QPow a_sp(int part_size, int mult, std::optional<int> sign, const Rational& q);

// Orthogonal counterpart: q^{-m/2} |Sp(m,q)| at even i, |O^{sign}(m,q)| at odd i.
QPow a_o(int part_size, int mult, std::optional<int> sign, const Rational& q);

}  // namespace classchain
