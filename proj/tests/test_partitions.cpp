#include <doctest.h>

#include "canram/errors.hpp"
#include "canram/partitions.hpp"

#include "oracles.hpp"

using namespace canram;

TEST_CASE("bell numbers match the triangle recurrence") {
    const std::uint64_t expected[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
    for (int n = 0; n <= 10; ++n) {
        CHECK(bell_number(n) == expected[n]);
        CHECK(bell_number(n) == oracle::bell(n));
    }
    CHECK(bell_number(15) == oracle::bell(15));
    CHECK_THROWS_AS((void)bell_number(kMaxPartitionSize + 1), input_error);
}

TEST_CASE("restricted growth strings enumerate all partitions in order") {
    for (int n = 0; n <= 6; ++n) {
        auto expected = oracle::partitions(n);
        std::vector<std::vector<int>> got;
        auto a = rgs_first(n);
        do {
            got.push_back(a);
        } while (rgs_next(a));
        CHECK(got == expected); // the recursive generator emits lexicographic order
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(is_restricted_growth(got[i]));
            CHECK(rgs_unrank(n, i) == got[i]);
        }
    }
}

TEST_CASE("for_each_partition visits bell many strings and honors the cap") {
    std::uint64_t seen = 0;
    auto visited = for_each_partition(5, 1'000, [&](const std::vector<int>&) { ++seen; });
    CHECK(visited == 52);
    CHECK(seen == 52);
    CHECK(for_each_partition(5, 51, [](const std::vector<int>&) {}) == 51);
    CHECK(for_each_partition(0, 10, [](const std::vector<int>&) {}) == 1);
    CHECK_THROWS_AS((void)rgs_unrank(3, 5), input_error);
}

TEST_CASE("is_restricted_growth rejects rank gaps") {
    CHECK(is_restricted_growth({0, 1, 0, 2}));
    CHECK_FALSE(is_restricted_growth({0, 2}));
    CHECK_FALSE(is_restricted_growth({1}));
    CHECK(is_restricted_growth({}));
}
