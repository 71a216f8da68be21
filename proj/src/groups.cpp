#include "classchain/groups.hpp"

namespace classchain {

Rational order_sp(int dim, const Rational& q) {
    if (dim < 0 || dim % 2 != 0) throw std::invalid_argument("order_sp: dimension must be even");
    const int n = dim / 2;
    Rational r = pow_rational(q, static_cast<long long>(n) * n);
    for (int i = 1; i <= n; ++i) r *= pow_rational(q, 2LL * i) - 1;
    return r;
}

Rational order_o(int dim, const Rational& q, int sign) {
    if (dim < 0) throw std::invalid_argument("order_o: negative dimension");
    if (sign != 1 && sign != -1) throw std::invalid_argument("order_o: sign must be +-1");
    if (dim == 0) return Rational(1);
    if (dim % 2 == 1) {
        const int n = (dim - 1) / 2;
        Rational r = 2 * pow_rational(q, static_cast<long long>(n) * n);
        for (int i = 1; i <= n; ++i) r *= pow_rational(q, 2LL * i) - 1;
        return r;
    }
    const int n = dim / 2;
    Rational r = 2 * pow_rational(q, static_cast<long long>(n) * n - n);
    r *= pow_rational(q, n) - sign;  // q^n - 1 for +, q^n + 1 for -
    for (int i = 1; i <= n - 1; ++i) r *= pow_rational(q, 2LL * i) - 1;
    return r;
}

Rational order_gl(int dim, const Rational& q) {
    if (dim < 0) throw std::invalid_argument("order_gl: negative dimension");
    Rational r(1);
    const Rational qm = pow_rational(q, dim);
    for (int i = 0; i < dim; ++i) r *= qm - pow_rational(q, i);
    return r;
}

Rational order_u(int dim, const Rational& q) {
    if (dim < 0) throw std::invalid_argument("order_u: negative dimension");
    Rational r = pow_rational(q, static_cast<long long>(dim) * (dim - 1) / 2);
    for (int i = 1; i <= dim; ++i) r *= pow_rational(q, i) - (i % 2 == 0 ? 1 : -1);
    return r;
}

Rational group_order(const GroupSpec& spec) {
    if (spec.q <= 1) throw std::invalid_argument("group_order: requires q > 1");
    switch (spec.family) {
        case GroupFamily::Sp:
            return order_sp(spec.dimension, spec.q);
        case GroupFamily::O:
            if (spec.dimension % 2 == 0 && spec.dimension > 0 && !spec.sign)
                throw std::invalid_argument("group_order: even orthogonal needs a sign");
            return order_o(spec.dimension, spec.q, spec.sign.value_or(+1));
        case GroupFamily::GL:
            return order_gl(spec.dimension, spec.q);
        case GroupFamily::U:
            return order_u(spec.dimension, spec.q);
    }
    throw std::logic_error("group_order: unknown family");
}

QPow a_sp(int part_size, int mult, std::optional<int> sign, const Rational& q) {
    if (part_size < 1 || mult < 0) throw std::invalid_argument("a_sp: bad arguments");
    if (mult == 0) return QPow{};
    if (part_size % 2 == 1) {
        if (mult % 2 != 0) throw std::invalid_argument("a_sp: odd size needs even multiplicity");
        if (sign) throw std::invalid_argument("a_sp: odd size carries no sign");
        return QPow{0, order_sp(mult, q)};
    }
    if (!sign) throw std::invalid_argument("a_sp: even size needs a sign");
    return QPow{mult, order_o(mult, q, *sign)};  // q^{mult/2} |O^sign(mult,q)|
}

QPow a_o(int part_size, int mult, std::optional<int> sign, const Rational& q) {
    if (part_size < 1 || mult < 0) throw std::invalid_argument("a_o: bad arguments");
    if (mult == 0) return QPow{};
    if (part_size % 2 == 0) {
        if (mult % 2 != 0) throw std::invalid_argument("a_o: even size needs even multiplicity");
        if (sign) throw std::invalid_argument("a_o: even size carries no sign");
        return QPow{-mult, order_sp(mult, q)};  // q^{-mult/2} |Sp(mult,q)|
    }
    if (!sign) throw std::invalid_argument("a_o: odd size needs a sign");
    return QPow{0, order_o(mult, q, *sign)};
}

}  // namespace classchain
