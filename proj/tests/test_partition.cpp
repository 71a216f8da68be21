#include "classchain/partition.hpp"

#include <doctest.h>

using namespace classchain;

TEST_CASE("conjugate on the running examples") {
    CHECK(conjugate(Partition({5, 4, 4, 1})) == Partition({4, 3, 3, 3, 1}));
    CHECK(conjugate(Partition()) == Partition());
    CHECK(conjugate(Partition({3})) == Partition({1, 1, 1}));
}

TEST_CASE("partition constructor rejects bad input") {
    CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
}

TEST_CASE("multiplicities and n_stat") {
    const Partition p({5, 4, 4, 1});
    const auto m = multiplicities(p);
    CHECK(m == std::map<int, int>{{5, 1}, {4, 2}, {1, 1}});
    CHECK(multiplicities(Partition()).empty());
    CHECK(multiplicities(Partition({2, 2})) == std::map<int, int>{{2, 2}});

    CHECK(n_stat(Partition()) == 0);
    CHECK(n_stat(Partition({7})) == 0);
    CHECK(n_stat(p) == 15);
}

TEST_CASE("combinatorial identity on examples") {
    CHECK(lemma_combinatorics_sides(Partition()) == std::pair<long long, long long>{0, 0});
    CHECK(lemma_combinatorics_sides(Partition({2, 2})) == std::pair<long long, long long>{4, 4});
    CHECK(lemma_combinatorics_sides(Partition({5, 4, 4, 1})) ==
          std::pair<long long, long long>{38, 38});
}

TEST_CASE("exhaustive properties over |lambda| <= 20") {
    for (const auto& p : partitions_up_to(20)) {
        CHECK(conjugate(conjugate(p)) == p);
        const auto [lhs, rhs] = lemma_combinatorics_sides(p);
        CHECK(lhs == rhs);

        long long weighted = 0;
        for (auto [size, m] : multiplicities(p)) weighted += 1LL * size * m;
        CHECK(weighted == p.size());
        CHECK(p.col(1) == p.num_parts());

        // lambda'_i = m_i + m_{i+1} + ...
        const auto m = multiplicities(p);
        const int largest = p.parts().empty() ? 0 : p.parts().front();
        for (int i = 1; i <= largest; ++i) {
            int suffix = 0;
            for (auto [size, cnt] : m)
                if (size >= i) suffix += cnt;
            CHECK(p.col(i) == suffix);
        }

        if (admissible(p, Flavor::Sp)) CHECK(p.size() % 2 == 0);
    }
}

TEST_CASE("admissibility") {
    CHECK_FALSE(admissible(Partition({1}), Flavor::Sp));
    CHECK(admissible(Partition(), Flavor::Sp));
    CHECK_FALSE(admissible(Partition({2}), Flavor::O));
    CHECK(admissible(Partition({2, 2}), Flavor::O));
    CHECK(admissible(Partition({2}), Flavor::Sp));
    CHECK(admissible(Partition({1}), Flavor::O));
}

TEST_CASE("sign assignments") {
    CHECK(sign_assignments(Partition(), Flavor::Sp).size() == 1);
    CHECK(sign_assignments(Partition(), Flavor::Sp).front().signs.empty());

    const auto sp22 = sign_assignments(Partition({2, 2}), Flavor::Sp);
    REQUIRE(sp22.size() == 2);
    CHECK(sp22[0].signs.at(2) == +1);
    CHECK(sp22[1].signs.at(2) == -1);

    const auto o111 = sign_assignments(Partition({1, 1, 1}), Flavor::O);
    REQUIRE(o111.size() == 2);
    CHECK(o111[0].signs.at(1) == +1);

    CHECK_THROWS_AS(sign_assignments(Partition({1}), Flavor::Sp), std::invalid_argument);

    // A size with a sign for each flavor-signed parity present.
    const auto sp = sign_assignments(Partition({4, 2, 2, 1, 1}), Flavor::Sp);
    CHECK(sp.size() == 4);  // sizes 4 and 2 carry signs
    for (const auto& assignment : sp) {
        CHECK(assignment.signs.count(4) == 1);
        CHECK(assignment.signs.count(2) == 1);
        CHECK(assignment.signs.count(1) == 0);
    }
}

TEST_CASE("json round trip") {
    const Partition p({5, 4, 4, 1});
    CHECK(to_json(p).dump() == R"({"parts":[5,4,4,1]})");
    CHECK(partition_from_json(to_json(p)) == p);

    for (const auto& lambda : partitions_up_to(8)) {
        CHECK(partition_from_json(to_json(lambda)) == lambda);
        for (Flavor f : {Flavor::Sp, Flavor::O}) {
            if (!admissible(lambda, f)) continue;
            for (const auto& sp : sign_assignments(lambda, f)) {
                const auto back = signed_partition_from_json(to_json(sp));
                CHECK(back.shape == sp.shape);
                CHECK(back.flavor == sp.flavor);
                CHECK(back.signs == sp.signs);
            }
        }
    }
}

TEST_CASE("enumeration helpers") {
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_of(6).size() == 11);
    CHECK(partitions_up_to(6).size() == 1 + 1 + 2 + 3 + 5 + 7 + 11);

    const auto exact2 = partitions_with_parts(2, 2, 6);
    for (const auto& p : exact2) {
        CHECK(p.num_parts() == 2);
        CHECK(p.parts().back() >= 2);
        CHECK(p.size() <= 6);
    }
    CHECK(exact2.size() == 4);  // (2,2) (3,2) (3,3) (4,2)
}
