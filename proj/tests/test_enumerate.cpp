#include <doctest.h>

#include "canram/enumerate.hpp"
#include "canram/errors.hpp"
#include "canram/structures.hpp"

using namespace canram;

TEST_CASE("up_pairs lists ordered index pairs lexicographically") {
    CHECK(up_pairs(0).empty());
    CHECK(up_pairs(3) == std::vector<Pair>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("graph enumeration counts and validity") {
    const std::size_t expected[] = {1, 1, 2, 8, 64};
    for (int n = 0; n <= 4; ++n) {
        auto gs = all_ordered_graphs(n);
        CHECK(gs.size() == expected[n]);
        for (const auto& g : gs) CHECK(validate(g).ok());
        for (std::size_t i = 1; i < gs.size(); ++i) CHECK(gs[i - 1] != gs[i]);
    }
    CHECK(all_ordered_graphs(2)[0] == make_graph(2, {}));
    CHECK(all_ordered_graphs(2)[1] == make_graph(2, {{0, 1}}));
    CHECK_THROWS_AS((void)all_ordered_graphs(7), budget_exceeded);
}

TEST_CASE("digraph and tournament enumerations") {
    const std::size_t expected[] = {1, 1, 2, 8, 64};
    for (int n = 0; n <= 4; ++n) {
        auto ds = all_reflexive_digraphs(n);
        auto ts = all_tournaments(n);
        CHECK(ds.size() == expected[n]);
        CHECK(ts.size() == expected[n]);
        for (const auto& d : ds) CHECK(validate(d).ok());
        for (const auto& t : ts) CHECK(validate(t).ok());
    }
    CHECK(all_tournaments(2)[0] == make_tournament(2, {{1, 0}}));
    CHECK(all_tournaments(2)[1] == make_tournament(2, {{0, 1}}));
}

TEST_CASE("poset enumeration matches the known counts") {
    const std::size_t expected[] = {1, 1, 2, 7, 40, 357, 4824};
    for (int n = 0; n <= 6; ++n) {
        auto ps = all_posets(n);
        CHECK(ps.size() == expected[n]);
        for (const auto& p : ps) CHECK(validate(p).ok());
    }
    auto p2 = all_posets(2);
    CHECK(p2[0] == make_poset_strict(2, {}));
    CHECK(p2[1] == make_poset_strict(2, {{0, 1}}));
}

TEST_CASE("single binary relation enumeration") {
    const std::size_t expected[] = {1, 2, 16, 512};
    for (int n = 0; n <= 3; ++n) {
        auto rs = all_one_binary_relational(n);
        CHECK(rs.size() == expected[n]);
        for (const auto& r : rs) CHECK(validate(r).ok());
        for (std::size_t i = 1; i < rs.size(); ++i) CHECK(rs[i - 1] != rs[i]);
    }
}

TEST_CASE("metric enumeration filters by the triangle inequality") {
    std::vector<Rational> one{rat(1)};
    CHECK(all_metrics(0, one).size() == 1);
    CHECK(all_metrics(1, one).size() == 1);
    CHECK(all_metrics(3, one).size() == 1);

    std::vector<Rational> close{rat(1), rat(2)};
    CHECK(all_metrics(2, close).size() == 2);
    CHECK(all_metrics(3, close).size() == 8); // 2 <= 1 + 1, so every combination works

    std::vector<Rational> far{rat(1), rat(3)};
    CHECK(all_metrics(3, far).size() == 5); // exactly one long edge is impossible

    for (const auto& m : all_metrics(3, far)) CHECK(validate(m).ok());
}

TEST_CASE("enumerations are deterministic") {
    CHECK(all_ordered_graphs(3) == all_ordered_graphs(3));
    CHECK(all_posets(4) == all_posets(4));
    std::vector<Rational> vals{rat(1), rat(2)};
    CHECK(all_metrics(3, vals) == all_metrics(3, vals));
}
