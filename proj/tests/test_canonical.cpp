#include <doctest.h>

#include <vector>

#include "canram/canonical.hpp"
#include "canram/category.hpp"
#include "canram/errors.hpp"
#include "canram/structures.hpp"

#include "oracles.hpp"

using namespace canram;

namespace {

std::vector<std::vector<int>> maps_of(const std::vector<Embedding>& hom) {
    std::vector<std::vector<int>> out;
    for (const auto& e : hom) out.push_back(e.map);
    return out;
}

} // namespace

TEST_CASE("select picks the subchain at the given positions") {
    std::vector<int> x{3, 5, 8};
    CHECK(select(x, std::vector<int>{0, 2}) == std::vector<int>{3, 8});
    CHECK(select(x, std::vector<int>{}) == std::vector<int>{});
    CHECK(select(x, std::vector<int>{0, 1, 2}) == x);
    CHECK_THROWS_AS((void)select(x, std::vector<int>{2, 0}), input_error);
    CHECK_THROWS_AS((void)select(x, std::vector<int>{3}), input_error);
    CHECK_THROWS_AS((void)select(std::vector<int>{5, 5}, std::vector<int>{0}), input_error);
}

TEST_CASE("canonical witness check on the smallest instances") {
    auto a = share(make_chain(1));
    auto b = share(make_chain(2));
    auto hom_ab = enumerate_embeddings(a, b);
    auto hom_ac = enumerate_embeddings(a, b); // c = b here

    CanonicalWitness id_w{identity(b), {}};
    CHECK(is_canonical_witness(Coloring{{0, 0}}, id_w, hom_ab, hom_ac));

    CanonicalWitness sep{identity(b), {0}};
    CHECK(is_canonical_witness(Coloring{{0, 1}}, sep, hom_ab, hom_ac));
    CHECK_FALSE(is_canonical_witness(Coloring{{0, 0}}, sep, hom_ab, hom_ac));
    CHECK_FALSE(is_canonical_witness(Coloring{{0, 1}}, id_w, hom_ab, hom_ac));

    CHECK_THROWS_AS((void)is_canonical_witness(Coloring{{0}}, id_w, hom_ab, hom_ac),
                    input_error);
}

TEST_CASE("witness check only reads color equality, never the ids") {
    auto a = share(make_chain(1));
    auto b = share(make_chain(3));
    auto c = share(make_chain(4));
    auto hom_ab = enumerate_embeddings(a, b);
    auto hom_ac = enumerate_embeddings(a, c);
    auto hom_bc = enumerate_embeddings(b, c);
    for (const auto& chi : enumerate_colorings(4, 100)) {
        Coloring renamed;
        for (int x : chi.colors) renamed.colors.push_back(9 - 3 * x);
        for (const auto& w : hom_bc) {
            for (unsigned mask = 0; mask < 2; ++mask) {
                CanonicalWitness wit{w, {}};
                if (mask) wit.positions.push_back(0);
                CHECK(is_canonical_witness(chi, wit, hom_ab, hom_ac) ==
                      is_canonical_witness(renamed, wit, hom_ab, hom_ac));
            }
        }
    }
}

TEST_CASE("witness search matches the exhaustive oracle") {
    auto a = share(make_chain(1));
    auto b = share(make_chain(3));
    auto c = share(make_chain(4));
    WitnessSearch search(a, b, c);
    auto ab = maps_of(search.hom_ab());
    auto ac = maps_of(search.hom_ac());
    auto bc = maps_of(search.hom_bc());

    for (const auto& chi : enumerate_colorings(static_cast<int>(ac.size()), 100)) {
        auto got = search.find(chi.colors);
        auto expected = oracle::find_witness(chi.colors, ab, ac, bc, a->n);
        CHECK(got.has_value() == expected.has_value());
        if (got && expected) {
            CHECK(hom_index(search.hom_bc(), got->w.map) == expected->first);
            CHECK(got->positions == expected->second);
            CHECK(oracle::is_witness(chi.colors, ab, ac, got->w.map, got->positions));
        }
    }
}

TEST_CASE("find_canonical_witness on hand-checked colorings") {
    auto a = share(make_chain(1));
    auto b = share(make_chain(3));
    auto c = share(make_chain(4));

    auto constant = find_canonical_witness(Coloring{{0, 0, 0, 0}}, a, b, c);
    REQUIRE(constant.has_value());
    CHECK(constant->w.map == std::vector<int>{0, 1, 2}); // first w in hom order
    CHECK(constant->positions.empty());

    CHECK_FALSE(find_canonical_witness(Coloring{{0, 0, 1, 1}}, a, b, c).has_value());

    auto b2 = share(make_chain(2));
    auto inj = find_canonical_witness(Coloring{{0, 1}}, a, b2, b2);
    REQUIRE(inj.has_value());
    CHECK(inj->positions == std::vector<int>{0});
}

TEST_CASE("a witness stays one under agreement-preserving position growth") {
    auto a = share(make_chain(2));
    auto b = share(make_chain(3));
    auto c = share(make_chain(4));
    WitnessSearch search(a, b, c);
    auto ab = maps_of(search.hom_ab());
    auto ac = maps_of(search.hom_ac());

    auto agree_same = [&](const std::vector<int>& p, const std::vector<int>& q) {
        for (const auto& f : ab)
            for (const auto& g : ab) {
                auto on = [&](const std::vector<int>& pos) {
                    for (int x : pos)
                        if (f[x] != g[x]) return false;
                    return true;
                };
                if (on(p) != on(q)) return false;
            }
        return true;
    };

    for (const auto& chi : enumerate_colorings(static_cast<int>(ac.size()), 1u << 14)) {
        auto wit = search.find(chi.colors);
        if (!wit) continue;
        // grow P by any superset inducing the same agreement relation
        for (unsigned mask = 0; mask < 4; ++mask) {
            std::vector<int> sup;
            for (int i = 0; i < 2; ++i)
                if (mask & (1u << i)) sup.push_back(i);
            bool is_sup = std::includes(sup.begin(), sup.end(), wit->positions.begin(),
                                        wit->positions.end());
            if (!is_sup || !agree_same(wit->positions, sup)) continue;
            CanonicalWitness grown{wit->w, sup};
            CHECK(is_canonical_witness(chi, grown, search.hom_ab(), search.hom_ac()));
        }
    }
}

TEST_CASE("verify_can_arrow on the chain spot checks") {
    auto c1 = share(make_chain(1));
    auto c2 = share(make_chain(2));
    auto c3 = share(make_chain(3));
    auto c4 = share(make_chain(4));
    auto c5 = share(make_chain(5));

    auto v22 = verify_can_arrow(c1, c2, c2);
    CHECK(v22.outcome == CanOutcome::Holds);
    CHECK(v22.total_colorings == 2);
    CHECK(v22.colorings_examined == 2);

    auto v34 = verify_can_arrow(c1, c3, c4);
    CHECK(v34.outcome == CanOutcome::Fails);
    REQUIRE(v34.counterexample.has_value());
    CHECK(v34.counterexample->colors == std::vector<int>{0, 0, 1, 1});
    CHECK(v34.counterexample_index == 3);
    CHECK(v34.total_colorings == 15);

    auto v35 = verify_can_arrow(c1, c3, c5);
    CHECK(v35.outcome == CanOutcome::Holds);
    CHECK(v35.colorings_examined == 52);
}

TEST_CASE("verify_can_arrow respects the coloring budget") {
    auto c1 = share(make_chain(1));
    auto c3 = share(make_chain(3));
    auto c4 = share(make_chain(4));
    VerifyOptions opts;
    opts.max_colorings = 2;
    auto v = verify_can_arrow(c1, c3, c4, opts);
    CHECK(v.outcome == CanOutcome::Inconclusive);
    CHECK(v.colorings_examined == 2);
    CHECK(v.total_colorings == 15);
}

TEST_CASE("empty hom(b, c) makes the arrow fail immediately") {
    auto a = share(make_graph(1, {}));
    auto b = share(make_graph(2, {{0, 1}}));
    auto c = share(make_graph(2, {}));
    REQUIRE(enumerate_embeddings(b, c).empty());
    auto v = verify_can_arrow(a, b, c);
    CHECK(v.outcome == CanOutcome::Fails);
    CHECK(v.counterexample_index == 0); // already the constant coloring has no witness
}

TEST_CASE("verify_can_arrow is stable across worker counts") {
    auto c1 = share(make_chain(1));
    auto c3 = share(make_chain(3));
    for (auto c : {share(make_chain(4)), share(make_chain(5))}) {
        auto base = verify_can_arrow(c1, c3, c);
        for (int workers : {2, 3, 8}) {
            VerifyOptions opts;
            opts.workers = workers;
            auto v = verify_can_arrow(c1, c3, c, opts);
            CHECK(v.outcome == base.outcome);
            CHECK(v.counterexample == base.counterexample);
            CHECK(v.counterexample_index == base.counterexample_index);
            CHECK(v.colorings_examined == base.colorings_examined);
            CHECK(v.total_colorings == base.total_colorings);
        }
    }
}

TEST_CASE("erc_search walks n upward and reports each step") {
    auto r2 = erc_search(1, 2, 4);
    CHECK(r2.found_n == 2);
    REQUIRE(r2.steps.size() == 1);
    CHECK(r2.steps[0].n == 2);
    CHECK(r2.steps[0].outcome == CanOutcome::Holds);

    auto r3 = erc_search(1, 3, 6);
    CHECK(r3.found_n == 5);
    REQUIRE(r3.steps.size() == 3);
    CHECK(r3.steps[0].n == 3);
    CHECK(r3.steps[0].outcome == CanOutcome::Fails);
    CHECK(r3.steps[1].n == 4);
    CHECK(r3.steps[1].outcome == CanOutcome::Fails);
    REQUIRE(r3.steps[1].counterexample.has_value());
    CHECK(r3.steps[1].counterexample->colors == std::vector<int>{0, 0, 1, 1});
    CHECK(r3.steps[2].n == 5);
    CHECK(r3.steps[2].outcome == CanOutcome::Holds);

    auto missed = erc_search(1, 3, 4);
    CHECK_FALSE(missed.found_n.has_value());
    CHECK(missed.steps.size() == 2);

    CHECK_THROWS_AS((void)erc_search(0, 2, 3), input_error);
    CHECK_THROWS_AS((void)erc_search(2, 1, 3), input_error);
}

TEST_CASE("erc_search stops on a budget-limited step") {
    VerifyOptions opts;
    opts.max_colorings = 3;
    auto r = erc_search(1, 3, 6, opts);
    CHECK_FALSE(r.found_n.has_value());
    REQUIRE(!r.steps.empty());
    CHECK(r.steps.back().outcome == CanOutcome::Inconclusive);
}
