#include "classchain/oracle.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace classchain {

PrimeField::Elem PrimeField::inv(Elem a) const {
    if (a == 0) throw std::domain_error("PrimeField::inv: zero");
    int r = 1, b = a;
    for (int e = p - 2; e > 0; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return r;
}

QuadField QuadField::make(int p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("QuadField: p must be an odd prime");
    for (int d = 2; d < p; ++d) {
        bool square = false;
        for (int x = 1; x < p && !square; ++x) square = x * x % p == d;
        if (!square) return QuadField{p, d};
    }
    throw std::logic_error("QuadField: no non-square found");
}

QuadField::Elem QuadField::inv(Elem a) const {
    // (a + b s)^{-1} = (a - b s) / (a^2 - d b^2)
    PrimeField f{p};
    const int norm = f.sub(f.mul(a.first, a.first), f.mul(nonsq, f.mul(a.second, a.second)));
    if (norm == 0) throw std::domain_error("QuadField::inv: zero");
    const int ninv = f.inv(norm);
    return {f.mul(a.first, ninv), f.mul(f.neg(a.second), ninv)};
}

template <class Field>
Matrix<Field> mat_identity(const Field& f, int n) {
    Matrix<Field> m;
    m.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = i == j ? f.one() : f.zero();
    return m;
}

template <class Field>
Matrix<Field> mat_mul(const Field& f, const Matrix<Field>& a, const Matrix<Field>& b) {
    Matrix<Field> r;
    r.n = a.n;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            auto acc = f.zero();
            for (int k = 0; k < a.n; ++k) acc = f.add(acc, f.mul(a.at(i, k), b.at(k, j)));
            r.at(i, j) = acc;
        }
    return r;
}

template <class Field>
int mat_rank(const Field& f, Matrix<Field> m) {
    int rank = 0;
    for (int col = 0; col < m.n && rank < m.n; ++col) {
        int pivot = -1;
        for (int row = rank; row < m.n; ++row)
            if (!f.is_zero(m.at(row, col))) {
                pivot = row;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < m.n; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        const auto scale = f.inv(m.at(rank, col));
        for (int j = 0; j < m.n; ++j) m.at(rank, j) = f.mul(m.at(rank, j), scale);
        for (int row = 0; row < m.n; ++row) {
            if (row == rank || f.is_zero(m.at(row, col))) continue;
            const auto factor = m.at(row, col);
            for (int j = 0; j < m.n; ++j)
                m.at(row, j) = f.sub(m.at(row, j), f.mul(factor, m.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

template <class Field>
std::uint64_t mat_key(const Field& f, const Matrix<Field>& m) {
    std::uint64_t key = 0;
    for (int i = 0; i < m.n * m.n; ++i) f.encode(m.e[i], key);
    return key;
}

namespace {

template <class Field>
Matrix<Field> mat_sub(const Field& f, const Matrix<Field>& a, const Matrix<Field>& b) {
    Matrix<Field> r;
    r.n = a.n;
    for (int i = 0; i < a.n * a.n; ++i) r.e[i] = f.sub(a.e[i], b.e[i]);
    return r;
}

// Columns forming a basis of ker(m) (as vectors of field elements).
template <class Field>
std::vector<std::vector<typename Field::Elem>> kernel_basis(const Field& f, Matrix<Field> m) {
    const int n = m.n;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int pivot = -1;
        for (int row = rank; row < n; ++row)
            if (!f.is_zero(m.at(row, col))) {
                pivot = row;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        const auto scale = f.inv(m.at(rank, col));
        for (int j = 0; j < n; ++j) m.at(rank, j) = f.mul(m.at(rank, j), scale);
        for (int row = 0; row < n; ++row) {
            if (row == rank || f.is_zero(m.at(row, col))) continue;
            const auto factor = m.at(row, col);
            for (int j = 0; j < n; ++j)
                m.at(row, j) = f.sub(m.at(row, j), f.mul(factor, m.at(rank, j)));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<std::vector<typename Field::Elem>> basis;
    for (int col = 0; col < n; ++col) {
        if (std::find(pivot_col.begin(), pivot_col.end(), col) != pivot_col.end()) continue;
        std::vector<typename Field::Elem> v(n, f.zero());
        v[col] = f.one();
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = f.neg(m.at(r, col));
        basis.push_back(std::move(v));
    }
    return basis;
}

// g^T gram g == gram (with entrywise conjugation of the left factor when
// `hermitian` is set).
template <class Field>
bool preserves_form(const Field& f, const Matrix<Field>& g, const Matrix<Field>& gram,
                    bool hermitian) {
    const int n = g.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto acc = f.zero();
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    auto left = hermitian ? f.conj(g.at(k, i)) : g.at(k, i);
                    acc = f.add(acc, f.mul(left, f.mul(gram.at(k, l), g.at(l, j))));
                }
            if (acc != gram.at(i, j)) return false;
        }
    return true;
}

template <class Field>
MatrixGroup<Field> closure(Field field, GroupSpec spec, Matrix<Field> gram,
                           const std::vector<Matrix<Field>>& generators,
                           const std::vector<long long>& allowed_orders, long long budget,
                           bool hermitian) {
    const long long cap = *std::max_element(allowed_orders.begin(), allowed_orders.end());
    if (cap > budget)
        throw BudgetError("group order " + std::to_string(cap) + " exceeds budget " +
                          std::to_string(budget));
    MatrixGroup<Field> g{std::move(field), std::move(spec), std::move(gram), {}, {}};
    g.elements.push_back(mat_identity(g.field, g.gram.n));
    g.keys.insert(mat_key(g.field, g.elements.front()));
    std::deque<size_t> work{0};
    while (!work.empty()) {
        const size_t idx = work.front();
        work.pop_front();
        for (const auto& gen : generators) {
            const auto prod = mat_mul(g.field, g.elements[idx], gen);
            const auto key = mat_key(g.field, prod);
            if (g.keys.insert(key).second) {
                g.elements.push_back(prod);
                work.push_back(g.elements.size() - 1);
                if (static_cast<long long>(g.elements.size()) > cap)
                    throw std::logic_error("closure: generated more elements than the order formula");
            }
        }
    }
    if (std::find(allowed_orders.begin(), allowed_orders.end(), g.order()) ==
        allowed_orders.end())
        throw std::logic_error("closure: element count " + std::to_string(g.order()) +
                               " does not match any order formula");
    for (const auto& el : g.elements)
        if (!preserves_form(g.field, el, g.gram, hermitian))
            throw std::logic_error("closure: element does not preserve the form");
    return g;
}

long long order_as_ll(const Rational& r) {
    if (denominator(r) != 1) throw std::logic_error("order_as_ll: non-integer order");
    return numerator(r).convert_to<long long>();
}

}  // namespace

PrimeGroup build_symplectic(int n, int p, long long budget) {
    if (n < 0 || p < 3 || p % 2 == 0)
        throw std::invalid_argument("build_symplectic: need n >= 0 and odd prime p");
    const int dim = 2 * n;
    PrimeField f{p};
    const long long expected = order_as_ll(order_sp(dim, Rational(p)));
    if (expected > budget)
        throw BudgetError("group order " + std::to_string(expected) + " exceeds budget " +
                          std::to_string(budget));

    Matrix<PrimeField> gram;  // <e_i, e_{n+i}> = 1 = -<e_{n+i}, e_i>
    gram.n = dim;
    for (int i = 0; i < dim * dim; ++i) gram.e[i] = 0;
    for (int i = 0; i < n; ++i) {
        gram.at(i, n + i) = 1;
        gram.at(n + i, i) = p - 1;
    }

    // Transvections T = I - c v v^T J over nonzero v and c.
    std::vector<Matrix<PrimeField>> gens;
    std::unordered_set<std::uint64_t> gen_keys;
    const long long vectors = pow_int(Int(p), dim).convert_to<long long>();
    for (long long vcode = 1; vcode < vectors; ++vcode) {
        std::vector<int> v(dim);
        long long rest = vcode;
        for (int i = 0; i < dim; ++i) {
            v[i] = static_cast<int>(rest % p);
            rest /= p;
        }
        std::vector<int> jv(dim);  // J v
        for (int i = 0; i < n; ++i) {
            jv[i] = v[n + i];
            jv[n + i] = f.neg(v[i]);
        }
        for (int c = 1; c < p; ++c) {
            Matrix<PrimeField> t = mat_identity(f, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    t.at(i, j) = f.sub(t.at(i, j), f.mul(c, f.mul(v[i], jv[j])));
            if (gen_keys.insert(mat_key(f, t)).second) gens.push_back(t);
        }
    }

    GroupSpec spec{GroupFamily::Sp, dim, Rational(p), std::nullopt};
    return closure(f, spec, gram, gens, {expected}, budget, false);
}

PrimeGroup build_orthogonal(int dim, int p, bool nonsquare_disc, long long budget) {
    if (dim < 1 || p < 3 || p % 2 == 0)
        throw std::invalid_argument("build_orthogonal: need dim >= 1 and odd prime p");
    PrimeField f{p};
    const QuadField probe = QuadField::make(p);  // reuse its non-square

    Matrix<PrimeField> gram;
    gram.n = dim;
    for (int i = 0; i < dim * dim; ++i) gram.e[i] = 0;
    for (int i = 0; i < dim; ++i) gram.at(i, i) = 1;
    if (nonsquare_disc) gram.at(0, 0) = probe.nonsq;

    // Reflections r_v = I - (2 / B(v,v)) v v^T B over anisotropic v.
    std::vector<Matrix<PrimeField>> gens;
    std::unordered_set<std::uint64_t> gen_keys;
    const long long vectors = pow_int(Int(p), dim).convert_to<long long>();
    for (long long vcode = 1; vcode < vectors; ++vcode) {
        std::vector<int> v(dim);
        long long rest = vcode;
        for (int i = 0; i < dim; ++i) {
            v[i] = static_cast<int>(rest % p);
            rest /= p;
        }
        std::vector<int> bv(dim);  // B v (diagonal B)
        int vbv = 0;
        for (int i = 0; i < dim; ++i) {
            bv[i] = f.mul(gram.at(i, i), v[i]);
            vbv = f.add(vbv, f.mul(v[i], bv[i]));
        }
        if (vbv == 0) continue;  // isotropic
        const int scale = f.mul(2 % p, f.inv(vbv));
        Matrix<PrimeField> r = mat_identity(f, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                r.at(i, j) = f.sub(r.at(i, j), f.mul(scale, f.mul(v[i], bv[j])));
        if (gen_keys.insert(mat_key(f, r)).second) gens.push_back(r);
    }

    const long long plus = order_as_ll(order_o(dim, Rational(p), +1));
    const long long minus = order_as_ll(order_o(dim, Rational(p), -1));

    GroupSpec spec{GroupFamily::O, dim, Rational(p), std::nullopt};
    auto g = closure(f, spec, gram, gens, {plus, minus}, budget, false);
    // Label by the count reached; for odd dim both orders coincide.
    g.spec.sign = (g.order() == plus) ? +1 : -1;
    return g;
}

QuadGroup build_unitary(int n, int p, long long budget) {
    if (n < 1 || n > 2 || p < 3 || p % 2 == 0)
        throw std::invalid_argument("build_unitary: need 1 <= n <= 2 and odd prime p");
    QuadField f = QuadField::make(p);
    const long long expected = order_as_ll(order_u(n, Rational(p)));
    if (expected > budget)
        throw BudgetError("group order " + std::to_string(expected) + " exceeds budget " +
                          std::to_string(budget));

    Matrix<QuadField> gram = mat_identity(f, n);
    QuadGroup g{f, GroupSpec{GroupFamily::U, n, Rational(p), std::nullopt}, gram, {}, {}};

    // Filter all n x n matrices over F_{p^2} for unitarity.
    const int q2 = f.order();
    long long total = 1;
    for (int i = 0; i < n * n; ++i) total *= q2;
    for (long long code = 0; code < total; ++code) {
        Matrix<QuadField> m;
        m.n = n;
        long long rest = code;
        for (int i = 0; i < n * n; ++i) {
            m.e[i] = f.from_index(static_cast<int>(rest % q2));
            rest /= q2;
        }
        // Columns orthonormal: sum_k conj(m_ki) m_kj = delta_ij.
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j) {
                auto acc = f.zero();
                for (int k = 0; k < n; ++k)
                    acc = f.add(acc, f.mul(f.conj(m.at(k, i)), m.at(k, j)));
                ok = acc == (i == j ? f.one() : f.zero());
            }
        if (!ok) continue;
        g.elements.push_back(m);
        g.keys.insert(mat_key(f, m));
        if (g.order() > expected)
            throw std::logic_error("build_unitary: more elements than the order formula");
    }
    if (g.order() != expected)
        throw std::logic_error("build_unitary: element count does not match the order formula");
    return g;
}

template <class Field>
Partition jordan_type_at_one(const Field& f, const Matrix<Field>& g) {
    const auto nilpart = mat_sub(f, g, mat_identity(f, g.n));
    std::vector<int> cols;
    auto power = mat_identity(f, g.n);
    int prev_rank = g.n;
    for (int j = 1; j <= g.n; ++j) {
        power = mat_mul(f, power, nilpart);
        const int r = mat_rank(f, power);
        if (prev_rank - r == 0) break;
        cols.push_back(prev_rank - r);
        prev_rank = r;
    }
    return conjugate(Partition(std::move(cols)));
}

template <class Field>
ClassStats class_statistics(const MatrixGroup<Field>& g) {
    ClassStats stats;
    for (const auto& el : g.elements) {
        const Partition type = jordan_type_at_one(g.field, el);
        ++stats.jordan[type];
        ++stats.fixed_dim[type.col(1)];
        if (type.size() == g.gram.n) ++stats.unipotent;
        ++stats.total;
    }
    return stats;
}

std::map<std::pair<int, int>, long long> isometry_statistics(const QuadGroup& g) {
    const auto& f = g.field;
    std::map<std::pair<int, int>, long long> counts;
    for (const auto& el : g.elements) {
        const auto fixed = kernel_basis(f, mat_sub(f, el, mat_identity(f, el.n)));
        const int w = static_cast<int>(fixed.size());
        // Gram of the Hermitian form restricted to the fixed space.
        Matrix<QuadField> gw;
        gw.n = w;
        for (int i = 0; i < w; ++i)
            for (int j = 0; j < w; ++j) {
                auto acc = f.zero();
                for (int l = 0; l < el.n; ++l)
                    acc = f.add(acc, f.mul(fixed[i][l], f.conj(fixed[j][l])));
                gw.at(i, j) = acc;
            }
        const int t = w - (w == 0 ? 0 : mat_rank(f, gw));
        const int s = w - t;
        const Partition type = jordan_type_at_one(f, el);
        if (type.col(1) != s + t || type.col(2) != t)
            throw std::logic_error("isometry_statistics: (s,t) disagrees with the Jordan type");
        ++counts[{s, t}];
    }
    return counts;
}

template <class Field>
bool verify_random_closure(const MatrixGroup<Field>& g, int pairs, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<size_t> pick(0, g.elements.size() - 1);
    for (int i = 0; i < pairs; ++i) {
        const auto prod = mat_mul(g.field, g.elements[pick(gen)], g.elements[pick(gen)]);
        if (!g.keys.count(mat_key(g.field, prod))) return false;
    }
    return true;
}

std::map<Partition, Rational> jordan_fractions(const ClassStats& stats) {
    std::map<Partition, Rational> out;
    for (const auto& [type, count] : stats.jordan) out[type] = Rational(count, stats.total);
    return out;
}

MixtureResult mixture_compare(Flavor flavor, const Partition& lambda, const MeasureParams& params,
                              const std::vector<std::map<Partition, Rational>>& fractions_by_n) {
    params.validate();
    if (params.u >= 1) throw std::invalid_argument("mixture_compare: requires u < 1");
    if (fractions_by_n.empty()) throw std::invalid_argument("mixture_compare: no oracle data");
    const Rational& u = params.u;
    const int n_max = static_cast<int>(fractions_by_n.size()) - 1;

    MixtureResult result;
    result.partial_sum = 0;
    for (int n = 0; n <= n_max; ++n) {
        Rational weight;
        if (flavor == Flavor::Sp) weight = (1 - u * u) * pow_rational(u, 2 * n);
        else weight = (n == 0 ? (1 - u) / (1 + u) : 2 * pow_rational(u, n) * (1 - u) / (1 + u));
        auto it = fractions_by_n[n].find(lambda);
        if (it != fractions_by_n[n].end()) result.partial_sum += weight * it->second;
    }
    result.tail_bound = (flavor == Flavor::Sp) ? pow_rational(u, 2 * (n_max + 1))
                                               : 2 * pow_rational(u, n_max + 1) / (1 + u);

    MeasureParams mp = params;
    mp.flavor = flavor;
    const Rational rational_part = measure_lumped(lambda, mp);
    const Interval pref = measure_prefactor(mp, Rational(1, 1000000000000LL));
    result.model = pref * rational_part;
    const Rational diff = result.partial_sum - result.model.mid();
    result.within = (diff < 0 ? -diff : diff) <= result.tail_bound + result.model.width();
    return result;
}

// Explicit instantiations for the two fields in use.
template Matrix<PrimeField> mat_identity(const PrimeField&, int);
template Matrix<QuadField> mat_identity(const QuadField&, int);
template Matrix<PrimeField> mat_mul(const PrimeField&, const Matrix<PrimeField>&,
                                    const Matrix<PrimeField>&);
template Matrix<QuadField> mat_mul(const QuadField&, const Matrix<QuadField>&,
                                   const Matrix<QuadField>&);
template int mat_rank(const PrimeField&, Matrix<PrimeField>);
template int mat_rank(const QuadField&, Matrix<QuadField>);
template std::uint64_t mat_key(const PrimeField&, const Matrix<PrimeField>&);
template std::uint64_t mat_key(const QuadField&, const Matrix<QuadField>&);
template Partition jordan_type_at_one(const PrimeField&, const Matrix<PrimeField>&);
template Partition jordan_type_at_one(const QuadField&, const Matrix<QuadField>&);
template ClassStats class_statistics(const PrimeGroup&);
template ClassStats class_statistics(const QuadGroup&);
template bool verify_random_closure(const PrimeGroup&, int, std::uint64_t);
template bool verify_random_closure(const QuadGroup&, int, std::uint64_t);

}  // namespace classchain
