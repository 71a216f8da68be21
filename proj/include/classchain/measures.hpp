// The u-parameterized measures on partitions attached to the symplectic,
// orthogonal and unitary families, their column-count laws, and the derived
// fixed-space / isometry-type / unipotent-count formulas.
#pragma once

#include "classchain/exactnum.hpp"
#include "classchain/groups.hpp"
#include "classchain/interval.hpp"
#include "classchain/partition.hpp"

namespace classchain {

// 0 < u <= 1, q > 1.  u = 1 is the limiting law of the family; operations
// that need the dimension-mixture interpretation reject it explicitly.
struct MeasureParams {
    Rational u;
    Rational q;
    Flavor flavor = Flavor::Sp;

    void validate() const;
};

// Every measure value factors as (exact rational part) * (prefactor): the
// prefactor is the infinite product prod_r (1 - u^2/q^{2r-1}) (divided by
// 1+u in the orthogonal case, or the alternating product for unitary) and is
// supplied separately as a certified interval so that identity tests stay
// exact.

// Certified prefactor for the given flavor, width <= eps.
Interval measure_prefactor(const MeasureParams& p, const Rational& eps);

// Rational part of the signed measure; requires an admissible signed shape
// of the matching flavor.
Rational measure_signed(const SignedPartition& sp, const MeasureParams& p);

// Rational part of the lumped measure: the exact sum of measure_signed over
// all sign assignments.  Inadmissible shapes give 0.
Rational measure_lumped(const Partition& p, const MeasureParams& params);

// The closed branch-product form of the lumped measure.  For the orthogonal
// flavor the branch for odd sizes of odd multiplicity uses the exponent
// (m^2-1)/4, which overstates the sign-summed value by q^{(m-1)/2} once
// m >= 3; measure_lumped is the ground truth and the verification suites
// quantify the gap.
Rational measure_lumped_displayed(const Partition& p, const MeasureParams& params);

// Rational part of the unitary measure u^{|lambda|} / (q^{sum lambda'_i^2}
// prod_i (1+1/q)(1-1/q^2)...(1+(-1)^{m_i+1}/q^{m_i})).
Rational measure_unitary(const Partition& p, const MeasureParams& params);

// Column-count laws.  p_prime is the prefactor-free law P'(k); the certified
// P(k) = prefactor * P'(k) has width <= eps.  Flavor must be Sp or O.
Rational p_prime(int k, const MeasureParams& p);
Interval p_column_count(int k, const MeasureParams& p, const Rational& eps);

// Certifies | sum_k P(k) - 1 | <= eps via exact partial sums and a geometric
// tail bound on P'.
bool normalization_check(const MeasureParams& p, const Rational& eps);

// P(dim fixed space = k) for a uniform element of Sp(2n,q) (flavor Sp,
// argument n is the half-dimension) or averaged over O^{+-}(n,q) (flavor O,
// argument n is the dimension): exact coefficient extraction from the
// u-mixture.  k out of range gives 0.
Rational fixed_space_prob_series(Flavor flavor, int n, int k, const Rational& q);

// The printed alternating-sum formula for a 2k-dimensional fixed space in
// Sp(2n,q), evaluated verbatim (with (q^2)^{binom(i,2)}), plus the odd-
// dimension analogue and the variants with (q^2)^{binom(i+1,2)}, which is
// the exponent that reproduces the series/oracle values.
Rational fixed_space_prob_printed(int n, int k, const Rational& q);
Rational fixed_space_prob_printed_odd(int n, int k, const Rational& q);
Rational fixed_space_prob_corrected(int n, int dim, const Rational& q);

// P(fixed space of isometry type (s,t)) in U(n,q): exact coefficient
// extraction over shapes with lambda'_1 = s+t, lambda'_2 = t.  Requires
// s + 2t <= n.
Rational isometry_prob_unitary(int n, int s, int t, const Rational& q);

// The printed finite-n sum evaluated verbatim (empty when n-2s-t < 0) and
// the variant with upper limit n-s-2t and denominator exponent s^2+2st+2t^2,
// which matches the extraction; plus the printed n->infinity product as a
// certified interval and its corrected counterpart (printed / q^{2t^2}).
Rational isometry_prob_unitary_printed(int n, int s, int t, const Rational& q);
Rational isometry_prob_unitary_corrected(int n, int s, int t, const Rational& q);
Interval isometry_limit_printed(int s, int t, const Rational& q, const Rational& eps);
Interval isometry_limit_corrected(int s, int t, const Rational& q, const Rational& eps);

// q^{2n^2}, the number of unipotent elements of Sp(2n,q).
Rational steinberg_unipotent_count(int n, const Rational& q);

// (a) the two closed forms of the one-column generating sum agree term by
// term for all n <= N (exact, also tied back to measure_lumped), and
// (b) at u^2 = 1/q the sum matches the Rogers-Ramanujan product
// prod_{j>=0} 1/((1-x^{5j+2})(1-x^{5j+3})) at x = 1/q^2 within eps,
// both sides certified.
bool rr_specialization_check(const Rational& q, int N, const Rational& eps);

// Effective per-size denominator factor of the lumped measure (the
// reciprocal of the sign-summed reciprocals of a_sp/a_o); coeff 0 marks an
// inadmissible size.  Shared with the chain closed forms.
QPow lumped_factor(Flavor flavor, int size, int mult, const Rational& q);

}  // namespace classchain
