#include "classchain/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace classchain {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1) throw std::invalid_argument("Partition: parts must be positive");
        if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
            throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
}

long long Partition::size() const {
    long long s = 0;
    for (int p : parts_) s += p;
    return s;
}

int Partition::col(int i) const {
    if (i < 1) throw std::invalid_argument("Partition::col: index is 1-based");
    int c = 0;
    for (int p : parts_) {
        if (p >= i) ++c;
        else break;
    }
    return c;
}

Partition conjugate(const Partition& p) {
    std::vector<int> cols;
    int largest = p.parts().empty() ? 0 : p.parts().front();
    cols.reserve(largest);
    for (int i = 1; i <= largest; ++i) cols.push_back(p.col(i));
    return Partition(std::move(cols));
}

std::map<int, int> multiplicities(const Partition& p) {
    std::map<int, int> m;
    for (int part : p.parts()) ++m[part];
    return m;
}

long long n_stat(const Partition& p) {
    long long s = 0;
    const auto& parts = p.parts();
    for (size_t i = 0; i < parts.size(); ++i) s += static_cast<long long>(i) * parts[i];
    return s;
}

long long sum_cols_squared(const Partition& p) {
    long long s = 0;
    int largest = p.parts().empty() ? 0 : p.parts().front();
    for (int i = 1; i <= largest; ++i) {
        long long c = p.col(i);
        s += c * c;
    }
    return s;
}

long long sum_mults_squared(const Partition& p) {
    long long s = 0;
    for (auto [size, m] : multiplicities(p)) s += static_cast<long long>(m) * m;
    return s;
}

std::pair<long long, long long> lemma_combinatorics_sides(const Partition& p) {
    auto mult = multiplicities(p);
    long long lhs = 0;
    for (auto it = mult.begin(); it != mult.end(); ++it) {
        for (auto jt = std::next(it); jt != mult.end(); ++jt)
            lhs += 2LL * it->first * it->second * jt->second;
        lhs += static_cast<long long>(it->first - 1) * it->second * it->second;
    }
    long long rhs = sum_cols_squared(p) - sum_mults_squared(p);
    return {lhs, rhs};
}

bool admissible(const Partition& p, Flavor flavor) {
    if (flavor == Flavor::U) return true;
    const int signed_parity = (flavor == Flavor::Sp) ? 1 : 0;  // parity whose mult must be even
    for (auto [size, m] : multiplicities(p))
        if (size % 2 == signed_parity && m % 2 != 0) return false;
    return true;
}

std::vector<SignedPartition> sign_assignments(const Partition& p, Flavor flavor) {
    if (flavor == Flavor::U) throw std::invalid_argument("sign_assignments: flavor must be Sp or O");
    if (!admissible(p, flavor)) throw std::invalid_argument("sign_assignments: inadmissible shape");
    const int signed_parity = (flavor == Flavor::Sp) ? 0 : 1;  // sizes carrying a sign
    std::vector<int> signed_sizes;
    for (auto [size, m] : multiplicities(p))
        if (size % 2 == signed_parity) signed_sizes.push_back(size);

    std::vector<SignedPartition> out;
    const size_t count = size_t(1) << signed_sizes.size();
    out.reserve(count);
    for (size_t mask = 0; mask < count; ++mask) {
        SignedPartition sp{p, flavor, {}};
        for (size_t b = 0; b < signed_sizes.size(); ++b)
            sp.signs[signed_sizes[b]] = (mask >> b) & 1 ? -1 : +1;
        out.push_back(std::move(sp));
    }
    return out;
}

namespace {

void gen_partitions(int remaining, int max_part, std::vector<int>& acc,
                    std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(acc);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        acc.push_back(part);
        gen_partitions(remaining - part, part, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> acc;
    gen_partitions(n, n, acc, out);
    return out;
}

std::vector<Partition> partitions_up_to(int max_size) {
    std::vector<Partition> out;
    for (int n = 0; n <= max_size; ++n) {
        auto pn = partitions_of(n);
        out.insert(out.end(), pn.begin(), pn.end());
    }
    return out;
}

namespace {

void gen_with_parts(int k, int min_part, int budget, int max_part, std::vector<int>& acc,
                    std::vector<Partition>& out) {
    if (k == 0) {
        out.emplace_back(acc);
        return;
    }
    // Remaining k parts each need at least min_part.
    for (int part = std::min(budget - min_part * (k - 1), max_part); part >= min_part; --part) {
        acc.push_back(part);
        gen_with_parts(k - 1, min_part, budget - part, part, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_with_parts(int num_parts, int min_part, int max_size) {
    std::vector<Partition> out;
    if (num_parts == 0) {
        out.emplace_back();
        return out;
    }
    if (min_part * num_parts > max_size) return out;
    std::vector<int> acc;
    gen_with_parts(num_parts, min_part, max_size, max_size, acc, out);
    return out;
}

nlohmann::json to_json(const Partition& p) {
    return nlohmann::json{{"parts", p.parts()}};
}

Partition partition_from_json(const nlohmann::json& j) {
    return Partition(j.at("parts").get<std::vector<int>>());
}

nlohmann::json to_json(const SignedPartition& sp) {
    nlohmann::json signs = nlohmann::json::object();
    for (auto [size, sign] : sp.signs) signs[std::to_string(size)] = sign > 0 ? "+" : "-";
    return nlohmann::json{{"parts", sp.shape.parts()},
                          {"flavor", sp.flavor == Flavor::Sp ? "symplectic" : "orthogonal"},
                          {"signs", signs}};
}

SignedPartition signed_partition_from_json(const nlohmann::json& j) {
    SignedPartition sp;
    sp.shape = Partition(j.at("parts").get<std::vector<int>>());
    const std::string flavor = j.at("flavor").get<std::string>();
    if (flavor == "symplectic") sp.flavor = Flavor::Sp;
    else if (flavor == "orthogonal") sp.flavor = Flavor::O;
    else throw std::invalid_argument("signed partition: unknown flavor '" + flavor + "'");
    for (auto& [key, val] : j.at("signs").items()) {
        const std::string s = val.get<std::string>();
        if (s != "+" && s != "-") throw std::invalid_argument("signed partition: bad sign");
        sp.signs[std::stoi(key)] = s == "+" ? +1 : -1;
    }
    return sp;
}

}  // namespace classchain
