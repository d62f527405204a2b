#include <catch_amalgamated.hpp>

#include "mn/combinat.hpp"

using namespace mn;

TEST_CASE("binom basics") {
    CHECK(binom(5, 2) == 10);
    CHECK(binom(4, 0) == 1);
    CHECK(binom(3, 5) == 0);
    CHECK(binom(0, 0) == 1);
    CHECK(binom(60, 30) == 118264581564861424ull);
    CHECK_THROWS_AS(binom(200, 100), std::overflow_error);
}

TEST_CASE("colex rank of small pairs") {
    CHECK(rank_colex(KSubset({0, 1})) == 0);
    CHECK(rank_colex(KSubset({0, 2})) == 1);
    CHECK(rank_colex(KSubset({1, 2})) == 2);
}

TEST_CASE("unrank examples") {
    CHECK(unrank_colex(0, 2, 5) == KSubset({0, 1}));
    CHECK(unrank_colex(2, 2, 5) == KSubset({1, 2}));
    CHECK(unrank_colex(9, 2, 5) == KSubset({3, 4}));
    CHECK_THROWS_AS(unrank_colex(10, 2, 5), std::out_of_range);
}

TEST_CASE("KSubset validation") {
    CHECK_THROWS_AS(KSubset({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(KSubset({2, 1}), std::invalid_argument);
    CHECK(KSubset({0, 3}).subset_of(KSubset({0, 2, 3})));
    CHECK_FALSE(KSubset({1, 3}).subset_of(KSubset({0, 2, 3})));
}

TEST_CASE("rank/unrank round trip and colex monotonicity") {
    for (int N : {5, 7, 9})
        for (int k = 0; k <= N; ++k) {
            auto all = all_ksubsets(N, k);
            REQUIRE(all.size() == binom(N, k));
            for (std::size_t r = 0; r < all.size(); ++r)
                CHECK(rank_colex(all[r]) == r);
            // strict colex increase: compare reversed element sequences
            for (std::size_t r = 1; r < all.size(); ++r) {
                std::vector<int> prev(all[r - 1].elems.rbegin(), all[r - 1].elems.rend());
                std::vector<int> cur(all[r].elems.rbegin(), all[r].elems.rend());
                CHECK(prev < cur);
            }
        }
}

TEST_CASE("colex rank is stable under window growth") {
    for (std::uint64_t r = 0; r < binom(6, 3); ++r)
        CHECK(unrank_colex(r, 3, 6) == unrank_colex(r, 3, 9));
}

TEST_CASE("GroundWindow invariants") {
    CHECK_NOTHROW(GroundWindow(5, 2));
    CHECK_THROWS_AS(GroundWindow(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(GroundWindow(8, 1), std::invalid_argument);
}
