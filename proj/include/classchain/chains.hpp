// The two transition kernels on column sizes, the alternating-kernel
// description of the measures, its closed prefix forms, and an exact sampler.
#pragma once

#include "classchain/measures.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace classchain {

enum class Kernel { K1, K2 };

// K1(a,b): supported on b <= a with a-b even; K2(a,b): supported on b <= a.
// Exact rationals in [0,1]; every q-exponent in the defining displays is
// asserted integral.
Rational k1(int a, int b, const MeasureParams& p);
Rational k2(int a, int b, const MeasureParams& p);

Rational kernel_entry(Kernel which, int a, int b, const MeasureParams& p);

// sum_{b=0}^{a} K(a,b); equals 1 exactly.
Rational row_sum(Kernel which, int a, const MeasureParams& p);

// Kernel used when stepping from column i (1-based) for the given flavor:
// Sp alternates K1 (odd i), K2 (even i); O swaps the roles.
Kernel step_kernel(Flavor flavor, int column);

// Prefactor-free probability of the partition under the alternating chain:
// P'(lambda'_1) * prod_i K(lambda'_i, lambda'_{i+1}) through the first zero
// column.  Equals the rational part of measure_lumped exactly.
Rational chain_pmf(const Partition& lambda, Flavor flavor, const MeasureParams& p);

// Closed form for the measure of the prefix event
// {lambda'_1 = s_1, ..., lambda'_{i-1} = s_{i-1}, lambda'_i = k}, at the
// prefactor-free level (the 1/(1+u) of the orthogonal cases stripped too).
// `prefix` holds s_1..s_{i-1}; requires s_1 >= ... >= s_{i-1} >= k >= 0.
Rational lemma_recur_prefix(Flavor flavor, const std::vector<int>& prefix, int k,
                            const MeasureParams& p);

// Verifies the two coupled recurrences expressing P'_{Sp} sums of P'_{O}
// terms and vice versa, exactly, for all a <= a_max.
bool recurrence_check(int a_max, const MeasureParams& p);

// Diagnostic for the imaginary-0th-column viewpoint: K2(a_probe, b) divided
// by P'_{Sp,u}(b); as a_probe grows this ratio approaches the infinite
// product prefactor.  Reported, never asserted.  Requires u < 1.
Rational zeroth_column_limit_probe(int b, int a_probe, const MeasureParams& p);

// Exact sampler: the first column is drawn by inversion against the
// certified cumulative of P (refining the prefactor enclosure and the dyadic
// uniform draw until every comparison is unambiguous), then the alternating
// kernels run until a zero column.  Identical seeds give identical streams.
class ChainSampler {
public:
    ChainSampler(Flavor flavor, MeasureParams params, std::uint64_t seed);

    Partition sample();

    const MeasureParams& params() const { return params_; }

private:
    // U in [num/2^bits, (num+1)/2^bits); extended 64 bits at a time.
    struct Dyadic {
        Int num;
        long long bits = 0;
    };

    Dyadic fresh_draw();
    void extend(Dyadic& d);
    // Tri-state comparison of U against an exact rational bound.
    enum class Cmp { Less, GreaterEqual, Ambiguous };
    static Cmp compare(const Dyadic& d, const Rational& bound);

    int draw_first_column();
    int kernel_step(Kernel which, int a);
    void tighten_prefactor();
    const std::vector<Rational>& row_cumulative(Kernel which, int a);

    Flavor flavor_;
    MeasureParams params_;
    std::mt19937_64 gen_;
    Rational prefactor_eps_;
    Interval prefactor_;
    Rational scale_;                        // 1 or 1/(1+u)
    std::vector<Rational> first_cumulative_;  // scale * sum_{j<=k} P'(j)
    std::map<std::pair<int, int>, std::vector<Rational>> rows_;

    static constexpr int kMaxRefinements = 512;
    static constexpr int kColumnCap = 1000000;
};

}  // namespace classchain
