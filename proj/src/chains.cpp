#include "classchain/chains.hpp"

#include <algorithm>
#include <stdexcept>

namespace classchain {

namespace {

// (q^{a-b}-1)(q^{a-b-2}-1)...(q^2-1) over descending even exponents.
Rational even_descending_product(const Rational& q, int top) {
    Rational r(1);
    for (int j = top; j >= 2; j -= 2) r *= pow_rational(q, j) - 1;
    return r;
}

MeasureParams with_flavor(const MeasureParams& p, Flavor f) {
    MeasureParams copy = p;
    copy.flavor = f;
    return copy;
}

long long exact_quarter(long long v, const char* what) {
    if (v % 4 != 0) throw std::logic_error(std::string(what) + ": q-exponent not integral");
    return v / 4;
}

long long exact_half(long long v, const char* what) {
    if (v % 2 != 0) throw std::logic_error(std::string(what) + ": q-exponent not integral");
    return v / 2;
}

}  // namespace

namespace {

// Kernel entries with the column-law values of the endpoints hoisted, so a
// whole row can reuse P'(a).
Rational k1_with(int a, int b, const MeasureParams& p, const Rational& psp_a,
                 const Rational& po_b) {
    if (b > a || (a - b) % 2 != 0) return Rational(0);
    const long long la = a, lb = b;
    const long long e = exact_quarter(la * la - lb * lb + 2 * (la + 1) * lb, "k1");
    return pow_rational(p.u, a) * po_b /
           (psp_a * pow_rational(p.q, e) * even_descending_product(p.q, a - b));
}

Rational k2_with(int a, int b, const MeasureParams& p, const Rational& po_a,
                 const Rational& psp_b) {
    if (b > a) return Rational(0);
    const long long la = a, lb = b;
    if ((a - b) % 2 == 0) {
        const long long e1 = exact_quarter((la - lb) * (la - lb), "k2");
        const long long e2 = exact_half(la * la + lb, "k2") - la;
        return pow_rational(p.u, a) * psp_b * pow_rational(p.q, e1) /
               (po_a * pow_rational(p.q, e2) * even_descending_product(p.q, a - b));
    }
    const long long e1 = exact_quarter((la - lb) * (la - lb) - 1, "k2");
    const long long e2 = exact_half(la * la - la, "k2");
    return pow_rational(p.u, a) * psp_b * pow_rational(p.q, e1) /
           (po_a * pow_rational(p.q, e2) * even_descending_product(p.q, a - b - 1));
}

}  // namespace

Rational k1(int a, int b, const MeasureParams& p) {
    p.validate();
    if (a < 0 || b < 0) throw std::invalid_argument("k1: negative state");
    if (b > a || (a - b) % 2 != 0) return Rational(0);
    return k1_with(a, b, p, p_prime(a, with_flavor(p, Flavor::Sp)),
                   p_prime(b, with_flavor(p, Flavor::O)));
}

Rational k2(int a, int b, const MeasureParams& p) {
    p.validate();
    if (a < 0 || b < 0) throw std::invalid_argument("k2: negative state");
    if (b > a) return Rational(0);
    return k2_with(a, b, p, p_prime(a, with_flavor(p, Flavor::O)),
                   p_prime(b, with_flavor(p, Flavor::Sp)));
}

Rational kernel_entry(Kernel which, int a, int b, const MeasureParams& p) {
    return which == Kernel::K1 ? k1(a, b, p) : k2(a, b, p);
}

Rational row_sum(Kernel which, int a, const MeasureParams& p) {
    p.validate();
    const Flavor own = which == Kernel::K1 ? Flavor::Sp : Flavor::O;
    const Flavor other = which == Kernel::K1 ? Flavor::O : Flavor::Sp;
    const Rational at_a = p_prime(a, with_flavor(p, own));
    Rational s(0);
    for (int b = 0; b <= a; ++b) {
        const Rational at_b = p_prime(b, with_flavor(p, other));
        s += which == Kernel::K1 ? k1_with(a, b, p, at_a, at_b) : k2_with(a, b, p, at_a, at_b);
    }
    return s;
}

Kernel step_kernel(Flavor flavor, int column) {
    if (flavor == Flavor::Sp) return column % 2 == 1 ? Kernel::K1 : Kernel::K2;
    if (flavor == Flavor::O) return column % 2 == 1 ? Kernel::K2 : Kernel::K1;
    throw std::invalid_argument("step_kernel: flavor must be Sp or O");
}

Rational chain_pmf(const Partition& lambda, Flavor flavor, const MeasureParams& p) {
    const int columns = lambda.parts().empty() ? 0 : lambda.parts().front();
    Rational prob = p_prime(lambda.col(1), with_flavor(p, flavor));
    for (int i = 1; i <= columns && prob != 0; ++i) {
        const int next = (i < columns) ? lambda.col(i + 1) : 0;
        prob *= kernel_entry(step_kernel(flavor, i), lambda.col(i), next, p);
    }
    return prob;
}

Rational lemma_recur_prefix(Flavor flavor, const std::vector<int>& prefix, int k,
                            const MeasureParams& p) {
    p.validate();
    if (flavor != Flavor::Sp && flavor != Flavor::O)
        throw std::invalid_argument("lemma_recur_prefix: flavor must be Sp or O");
    if (k < 0) throw std::invalid_argument("lemma_recur_prefix: k must be >= 0");
    for (size_t j = 0; j < prefix.size(); ++j) {
        const int next = (j + 1 < prefix.size()) ? prefix[j + 1] : k;
        if (prefix[j] < next) throw std::invalid_argument("lemma_recur_prefix: non-monotone prefix");
    }
    const int i = static_cast<int>(prefix.size()) + 1;  // column index of k
    if (i == 1) return p_prime(k, with_flavor(p, flavor));

    long long sum_s = 0, sum_s2 = 0, sum_m2 = 0;
    QPow denom{0, Rational(1)};
    for (size_t j = 0; j < prefix.size(); ++j) {
        const long long s = prefix[j];
        const int m = prefix[j] - ((j + 1 < prefix.size()) ? prefix[j + 1] : k);
        sum_s += s;
        sum_s2 += s * s;
        sum_m2 += 1LL * m * m;
        denom *= lumped_factor(flavor, static_cast<int>(j) + 1, m, p.q);
        if (denom.coeff == 0) return Rational(0);
    }

    QPow q_power{sum_s2 - sum_m2, Rational(1)};  // half-units of q in the denominator
    Flavor column_law;
    if (flavor == Flavor::Sp) {
        column_law = (i % 2 == 1) ? Flavor::Sp : Flavor::O;
        if (i % 2 == 0) q_power.half_exp += k;
    } else {
        column_law = (i % 2 == 1) ? Flavor::O : Flavor::Sp;
        if (i % 2 == 0) q_power.half_exp -= k;  // numerator q^{k/2}
    }
    denom *= q_power;
    return pow_rational(p.u, sum_s) * p_prime(k, with_flavor(p, column_law)) /
           denom.to_rational(p.q);
}

bool recurrence_check(int a_max, const MeasureParams& p) {
    p.validate();
    for (int a = 0; a <= a_max; ++a) {
        const long long la = a;
        Rational rhs_sp(0);
        for (int b = a % 2; b <= a; b += 2) {
            const long long lb = b;
            const long long e = exact_quarter(la * la - lb * lb + 2 * (la + 1) * lb, "recurrence");
            rhs_sp += pow_rational(p.u, a) * p_prime(b, with_flavor(p, Flavor::O)) /
                      (pow_rational(p.q, e) * even_descending_product(p.q, a - b));
        }
        if (rhs_sp != p_prime(a, with_flavor(p, Flavor::Sp))) return false;

        Rational rhs_o(0);
        for (int b = 0; b <= a; ++b) {
            const long long lb = b;
            const Rational psp = p_prime(b, with_flavor(p, Flavor::Sp));
            if ((a - b) % 2 == 0) {
                const long long e1 = exact_quarter((la - lb) * (la - lb), "recurrence");
                const long long e2 = exact_half(la * la + lb - 2 * la, "recurrence");
                rhs_o += pow_rational(p.u, a) * psp * pow_rational(p.q, e1) /
                         (pow_rational(p.q, e2) * even_descending_product(p.q, a - b));
            } else {
                const long long e1 = exact_quarter((la - lb) * (la - lb) - 1, "recurrence");
                const long long e2 = exact_half(la * la - la, "recurrence");
                rhs_o += pow_rational(p.u, a) * psp * pow_rational(p.q, e1) /
                         (pow_rational(p.q, e2) * even_descending_product(p.q, a - b - 1));
            }
        }
        if (rhs_o != p_prime(a, with_flavor(p, Flavor::O))) return false;
    }
    return true;
}

Rational zeroth_column_limit_probe(int b, int a_probe, const MeasureParams& p) {
    p.validate();
    if (p.u >= 1) throw std::invalid_argument("zeroth_column_limit_probe: requires u < 1");
    if (b < 0 || a_probe < 0) throw std::invalid_argument("zeroth_column_limit_probe: bad state");
    if (b > a_probe) return Rational(0);
    return k2(a_probe, b, p) / p_prime(b, with_flavor(p, Flavor::Sp));
}

ChainSampler::ChainSampler(Flavor flavor, MeasureParams params, std::uint64_t seed)
    : flavor_(flavor), params_(std::move(params)), gen_(seed) {
    params_.validate();
    if (flavor_ != Flavor::Sp && flavor_ != Flavor::O)
        throw std::invalid_argument("ChainSampler: flavor must be Sp or O");
    params_.flavor = flavor_;
    scale_ = (flavor_ == Flavor::O) ? 1 / (1 + params_.u) : Rational(1);
    prefactor_eps_ = pow_rational(Rational(1, 2), 80);
    prefactor_ = infinite_product_enclosure(params_.u * params_.u, params_.q, prefactor_eps_);
}

ChainSampler::Dyadic ChainSampler::fresh_draw() {
    Dyadic d;
    d.num = Int(gen_());
    d.bits = 64;
    return d;
}

void ChainSampler::extend(Dyadic& d) {
    d.num <<= 64;
    d.num += Int(gen_());
    d.bits += 64;
}

ChainSampler::Cmp ChainSampler::compare(const Dyadic& d, const Rational& bound) {
    // U < bound certainly when (num+1)/2^bits <= bound; U >= bound certainly
    // when num/2^bits >= bound.
    const Int two_b = Int(1) << static_cast<unsigned>(d.bits);
    const Int lhs_hi = (d.num + 1) * denominator(bound);
    const Int rhs = numerator(bound) * two_b;
    if (lhs_hi <= rhs) return Cmp::Less;
    if (d.num * denominator(bound) >= rhs) return Cmp::GreaterEqual;
    return Cmp::Ambiguous;
}

void ChainSampler::tighten_prefactor() {
    prefactor_eps_ /= 2;
    prefactor_ = infinite_product_enclosure(params_.u * params_.u, params_.q, prefactor_eps_);
}

int ChainSampler::draw_first_column() {
    Dyadic u = fresh_draw();
    int k = 0;
    int refinements = 0;
    for (;;) {
        while (static_cast<int>(first_cumulative_.size()) <= k) {
            const Rational prev =
                first_cumulative_.empty() ? Rational(0) : first_cumulative_.back();
            const int next = static_cast<int>(first_cumulative_.size());
            first_cumulative_.push_back(prev + scale_ * p_prime(next, params_));
        }
        // True cumulative lies in [prefactor.lo, prefactor.hi] * first_cumulative_[k].
        if (compare(u, prefactor_.lo * first_cumulative_[k]) == Cmp::Less) return k;
        if (compare(u, prefactor_.hi * first_cumulative_[k]) == Cmp::GreaterEqual) {
            ++k;
            if (k > kColumnCap) throw std::runtime_error("ChainSampler: first column ran away");
            continue;
        }
        if (++refinements > kMaxRefinements)
            throw std::runtime_error("ChainSampler: refinement cap hit (boundary draw?)");
        // Tighten whichever side causes the ambiguity.
        if (prefactor_.width() * first_cumulative_[k] > pow_rational(Rational(1, 2), u.bits + 8))
            tighten_prefactor();
        else
            extend(u);
    }
}

const std::vector<Rational>& ChainSampler::row_cumulative(Kernel which, int a) {
    const auto key = std::make_pair(which == Kernel::K1 ? 1 : 2, a);
    auto it = rows_.find(key);
    if (it != rows_.end()) return it->second;
    std::vector<Rational> cum;
    Rational run(0);
    for (int b = 0; b <= a; ++b) {
        run += kernel_entry(which, a, b, params_);
        cum.push_back(run);
    }
    return rows_.emplace(key, std::move(cum)).first->second;
}

int ChainSampler::kernel_step(Kernel which, int a) {
    const auto& cum = row_cumulative(which, a);
    Dyadic u = fresh_draw();
    int refinements = 0;
    for (int b = 0; b <= a;) {
        switch (compare(u, cum[b])) {
            case Cmp::Less:
                return b;
            case Cmp::GreaterEqual:
                ++b;
                break;
            case Cmp::Ambiguous:
                if (++refinements > kMaxRefinements)
                    throw std::runtime_error("ChainSampler: refinement cap hit (boundary draw?)");
                extend(u);
                break;
        }
    }
    // Row sums are exactly 1, so U >= cum[a] can only be an artifact of the
    // draw's upper end; the top state is the correct inverse image.
    return a;
}

Partition ChainSampler::sample() {
    std::vector<int> columns;
    int current = draw_first_column();
    int column_index = 1;
    while (current > 0) {
        columns.push_back(current);
        if (column_index > kColumnCap)
            throw std::runtime_error("ChainSampler: column cap exceeded");
        current = kernel_step(step_kernel(flavor_, column_index), current);
        ++column_index;
    }
    return conjugate(Partition(std::move(columns)));
}

}  // namespace classchain
