// Partitions and signed partitions: duals, multiplicities, admissibility, and
// the quadratic statistics the measures are built from.
#pragma once

#include "classchain/rational.hpp"

#include <json.hpp>

#include <compare>
#include <map>
#include <vector>

namespace classchain {

enum class Flavor { Sp, O, U };

// Weakly decreasing positive parts; the empty partition is a first-class value.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int num_parts() const { return static_cast<int>(parts_.size()); }
    long long size() const;  // |lambda|
    bool empty() const { return parts_.empty(); }

    // lambda'_i = #{j : lambda_j >= i}, 1-based; 0 beyond the largest part.
    int col(int i) const;

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

Partition conjugate(const Partition& p);
std::map<int, int> multiplicities(const Partition& p);
long long n_stat(const Partition& p);

// Both sides of the identity
//   sum_{h<i} 2h m_h m_i + sum_i (i-1) m_i^2 = sum_i (lambda'_i)^2 - sum_i m_i^2,
// computed independently; callers assert equality.
std::pair<long long, long long> lemma_combinatorics_sides(const Partition& p);

// sum_i (lambda'_i)^2 and sum_i m_i^2 (the exponent statistics of the measures).
long long sum_cols_squared(const Partition& p);
long long sum_mults_squared(const Partition& p);

// Symplectic: odd part sizes have even multiplicity.
// Orthogonal: even part sizes have even multiplicity.
bool admissible(const Partition& p, Flavor flavor);

// Sign map keyed by the part sizes that carry a sign for the flavor
// (even sizes for Sp, odd sizes for O), only where m_i >= 1.  Values +1/-1.
struct SignedPartition {
    Partition shape;
    Flavor flavor = Flavor::Sp;
    std::map<int, int> signs;
};

// All 2^c sign assignments for an admissible shape, in a deterministic order
// (lowest signed size toggles fastest, '+' before '-').
std::vector<SignedPartition> sign_assignments(const Partition& p, Flavor flavor);

// Enumeration helpers for the verification suites.
std::vector<Partition> partitions_of(int n);
std::vector<Partition> partitions_up_to(int max_size);  // all |lambda| <= max_size
// Partitions with exactly `num_parts` parts, every part >= min_part, |lambda| <= max_size.
std::vector<Partition> partitions_with_parts(int num_parts, int min_part, int max_size);

// JSON: {"parts":[5,4,4,1]} and
// {"parts":[...],"flavor":"symplectic","signs":{"4":"+","2":"-"}}.
nlohmann::json to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SignedPartition& sp);
SignedPartition signed_partition_from_json(const nlohmann::json& j);

}  // namespace classchain
