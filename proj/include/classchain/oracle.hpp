// Brute-force ground truth: small classical matrix groups over odd prime
// fields built by generator closure, eigenvalue-1 Jordan data, and exact
// class statistics for comparison with the measures.
#pragma once

#include "classchain/interval.hpp"
#include "classchain/measures.hpp"
#include "classchain/partition.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace classchain {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// F_p, p an odd prime.
struct PrimeField {
    int p = 3;
    using Elem = int;

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(int v) const { return ((v % p) + p) % p; }
    Elem add(Elem a, Elem b) const { int s = a + b; return s >= p ? s - p : s; }
    Elem sub(Elem a, Elem b) const { int s = a - b; return s < 0 ? s + p : s; }
    Elem mul(Elem a, Elem b) const { return a * b % p; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem inv(Elem a) const;
    Elem conj(Elem a) const { return a; }
    bool is_zero(Elem a) const { return a == 0; }
    int encoded_size() const { return 1; }
    int order() const { return p; }
    Elem from_index(int v) const { return v; }
    void encode(Elem a, std::uint64_t& key) const { key = key * p + a; }
};

// F_{p^2} = F_p[x]/(x^2 - d) with d a fixed non-square; conj is the
// Frobenius a + bx -> a - bx.
struct QuadField {
    int p = 3;
    int nonsq = 2;
    using Elem = std::pair<int, int>;  // a + b*sqrt(nonsq)

    static QuadField make(int p);

    Elem zero() const { return {0, 0}; }
    Elem one() const { return {1, 0}; }
    Elem add(Elem a, Elem b) const {
        return {(a.first + b.first) % p, (a.second + b.second) % p};
    }
    Elem sub(Elem a, Elem b) const {
        return {(a.first - b.first + p) % p, (a.second - b.second + p) % p};
    }
    Elem mul(Elem a, Elem b) const {
        return {(a.first * b.first + nonsq * a.second * b.second) % p,
                (a.first * b.second + a.second * b.first) % p};
    }
    Elem neg(Elem a) const { return {(p - a.first) % p, (p - a.second) % p}; }
    Elem conj(Elem a) const { return {a.first, (p - a.second) % p}; }
    Elem inv(Elem a) const;
    bool is_zero(Elem a) const { return a.first == 0 && a.second == 0; }
    int encoded_size() const { return 2; }
    int order() const { return p * p; }
    Elem from_index(int v) const { return {v % p, v / p}; }
    void encode(Elem a, std::uint64_t& key) const { key = (key * p + a.first) * p + a.second; }
};

template <class Field>
struct Matrix {
    using Elem = typename Field::Elem;
    int n = 0;
    std::array<Elem, 16> e{};

    Elem& at(int i, int j) { return e[i * n + j]; }
    const Elem& at(int i, int j) const { return e[i * n + j]; }
};

template <class Field>
Matrix<Field> mat_identity(const Field& f, int n);
template <class Field>
Matrix<Field> mat_mul(const Field& f, const Matrix<Field>& a, const Matrix<Field>& b);
template <class Field>
int mat_rank(const Field& f, Matrix<Field> m);
template <class Field>
std::uint64_t mat_key(const Field& f, const Matrix<Field>& m);

inline constexpr long long kDefaultOracleBudget = 120000;

template <class Field>
struct MatrixGroup {
    Field field;
    GroupSpec spec;
    Matrix<Field> gram;
    std::vector<Matrix<Field>> elements;
    std::unordered_set<std::uint64_t> keys;

    long long order() const { return static_cast<long long>(elements.size()); }
};

using PrimeGroup = MatrixGroup<PrimeField>;
using QuadGroup = MatrixGroup<QuadField>;

// Sp(2n,p): closure of the symplectic transvections x -> x + c<x,v>v for the
// standard alternating form.  The element count is certified against the
// order formula and every element is checked to preserve the form.
PrimeGroup build_symplectic(int n, int p, long long budget = kDefaultOracleBudget);

// O(dim,p) for the diagonal Gram matrix I or diag(nonsquare,1,...,1):
// closure of the reflections in anisotropic vectors.  The +- label is
// assigned by matching the element count against the two order formulas (for
// odd dim they coincide and either label is accepted).
PrimeGroup build_orthogonal(int dim, int p, bool nonsquare_disc,
                            long long budget = kDefaultOracleBudget);

// U(n,p) over F_{p^2} with the identity Hermitian Gram, by filtering all
// n x n matrices (n <= 2).
QuadGroup build_unitary(int n, int p, long long budget = kDefaultOracleBudget);

// Jordan type at eigenvalue 1: lambda'_j = rank((g-I)^{j-1}) - rank((g-I)^j).
template <class Field>
Partition jordan_type_at_one(const Field& f, const Matrix<Field>& g);

struct ClassStats {
    std::map<Partition, long long> jordan;
    std::map<int, long long> fixed_dim;  // dim ker(g-I) histogram
    long long unipotent = 0;
    long long total = 0;
};

template <class Field>
ClassStats class_statistics(const MatrixGroup<Field>& g);

// Isometry types (s,t) of the fixed spaces of a unitary group, with the
// cross-check (s+t, t) = (lambda'_1, lambda'_2) enforced per element.
std::map<std::pair<int, int>, long long> isometry_statistics(const QuadGroup& g);

// Product of a seeded random sample of element pairs stays inside the group.
template <class Field>
bool verify_random_closure(const MatrixGroup<Field>& g, int pairs, std::uint64_t seed);

// lambda -> count/|G|
std::map<Partition, Rational> jordan_fractions(const ClassStats& stats);

// Dimension-mixture comparison: fractions_by_n[m] holds the exact Jordan
// fractions of the m-th group of the family (Sp(2m,q), or the +- average of
// O(m,q)); index 0 is the trivial group.  partial_sum accumulates the mixture
// weights times the oracle fractions, tail_bound the omitted weight, and
// model is a certified enclosure of the measure of lambda.
struct MixtureResult {
    Rational partial_sum;
    Rational tail_bound;
    Interval model;
    bool within = false;
};

MixtureResult mixture_compare(Flavor flavor, const Partition& lambda, const MeasureParams& params,
                              const std::vector<std::map<Partition, Rational>>& fractions_by_n);

}  // namespace classchain
