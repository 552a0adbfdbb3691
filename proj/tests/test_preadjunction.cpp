#include <doctest.h>

#include <vector>

#include "canram/category.hpp"
#include "canram/enumerate.hpp"
#include "canram/errors.hpp"
#include "canram/preadjunction.hpp"
#include "canram/structures.hpp"

#include "oracles.hpp"

using namespace canram;

namespace {

TightSet ts(std::vector<long long> ints) {
    std::vector<Rational> v;
    for (long long x : ints) v.push_back(rat(x));
    return make_tight_set(std::move(v));
}

OrderedStructure two_points(const Rational& d) {
    return make_metric(2, {rat(0), d, d, rat(0)});
}

} // namespace

TEST_CASE("tightness check and its oracle") {
    CHECK(is_tight(ts({0, 1, 2}).values));
    CHECK(is_tight(ts({0, 2, 3, 4}).values));
    CHECK(is_tight(ts({0, 5}).values));
    CHECK_FALSE(is_tight(std::vector<Rational>{rat(0), rat(1), rat(3)}));

    CHECK_THROWS_AS((void)is_tight(std::vector<Rational>{}), input_error);
    CHECK_THROWS_AS((void)is_tight(std::vector<Rational>{rat(1), rat(2)}), input_error);
    CHECK_THROWS_AS((void)is_tight(std::vector<Rational>{rat(0), rat(2), rat(1)}), input_error);
    CHECK_THROWS_AS((void)make_tight_set({rat(0), rat(1), rat(3)}), input_error);

    // every valid scale drawn from {0, 1/2, ..., 3}, compared pairwise
    std::vector<Rational> grid;
    for (int i = 0; i <= 6; ++i) grid.push_back(rat(i, 2));
    for (unsigned mask = 1; mask < (1u << 7); mask += 2) { // bit 0 keeps the zero
        std::vector<Rational> v;
        for (int i = 0; i <= 6; ++i)
            if (mask & (1u << i)) v.push_back(grid[i]);
        CHECK(is_tight(v) == oracle::tight(v));
    }
}

TEST_CASE("tight_extension finds a smallest tight superset") {
    auto same = tight_extension(ts({0, 1, 2}).values);
    REQUIRE(same.has_value());
    CHECK(same->values == ts({0, 1, 2}).values);

    auto ext = tight_extension(std::vector<Rational>{rat(0), rat(1), rat(3)});
    REQUIRE(ext.has_value());
    CHECK(ext->values == ts({0, 1, 2, 3}).values);

    auto trivial = tight_extension(ts({0, 5}).values);
    REQUIRE(trivial.has_value());
    CHECK(trivial->values == ts({0, 5}).values);

    auto half = tight_extension(std::vector<Rational>{rat(0), rat(1, 2), rat(2)});
    REQUIRE(half.has_value());
    CHECK(is_tight(half->values));
    // postconditions: superset, same extremes
    const std::vector<Rational> wanted{rat(0), rat(1, 2), rat(2)};
    CHECK(std::includes(half->values.begin(), half->values.end(), wanted.begin(), wanted.end()));
    CHECK(half->values[1] == rat(1, 2));
    CHECK(half->values.back() == rat(2));

    CHECK_THROWS_AS((void)tight_extension(std::vector<Rational>{rat(0)}), input_error);
    TightSearchOptions strict;
    strict.max_subsets = 1;
    CHECK_THROWS_AS((void)tight_extension(std::vector<Rational>{rat(0), rat(1), rat(3)}, strict),
                    budget_exceeded);
}

TEST_CASE("level poset of a metric space") {
    auto one = make_metric(1, {rat(0)});
    auto p = f_obj(one, ts({0, 1}));
    CHECK(p == make_poset_strict(2, {{0, 1}}));

    auto m = two_points(rat(2));
    auto q = f_obj(m, ts({0, 1, 2}));
    REQUIRE(q.n == 6);
    REQUIRE(validate(q).ok());
    // index of (x, i) is i * 2 + x
    CHECK(pair_present(q.poset().leq, 0, 5));       // d = 2 <= s2 - s0
    CHECK_FALSE(pair_present(q.poset().leq, 0, 3)); // d = 2 > s1 - s0
    CHECK(pair_present(q.poset().leq, 0, 2));       // same point, one level up
    CHECK_FALSE(pair_present(q.poset().leq, 0, 1)); // same level, distinct points

    CHECK(f_obj(make_metric(0, {}), ts({0, 1})).n == 0);
    CHECK_THROWS_AS((void)f_obj(two_points(rat(3, 2)), ts({0, 1})), input_error);

    for (const auto& space : all_metrics(2, std::vector<Rational>{rat(1), rat(2)}))
        CHECK(validate(f_obj(space, ts({0, 1, 2}))).ok());
}

TEST_CASE("tuple metric space of a poset") {
    CHECK(g_obj(make_poset(1, {{0, 0}}), ts({0, 1})) == make_metric(1, {rat(0)}));

    auto chain2 = make_poset_strict(2, {{0, 1}});
    auto m = g_obj(chain2, ts({0, 1}));
    CHECK(m == two_points(rat(1)));

    auto anti = make_poset_strict(2, {});
    auto m2 = g_obj(anti, ts({0, 1, 2}));
    REQUIRE(m2.n == 4); // pairs over two incomparable points
    REQUIRE(validate(m2).ok());
    const auto& d = m2.metric().d;
    // tuples in lexicographic order: (0,0), (0,1), (1,0), (1,1)
    CHECK(d[0 * 4 + 3] == rat(2)); // no shift aligns distinct incomparable points
    CHECK(d[0 * 4 + 1] == rat(2)); // shift 1 still compares 0 with 1
    CHECK(d[1 * 4 + 2] == rat(1)); // (0,1) vs (1,0): shift 1 compares each point with itself

    CHECK_THROWS_AS((void)g_obj(make_poset_strict(3, {}), ts({0, 1, 2, 3, 4, 5}), 100),
                    budget_exceeded);
    TightSet loose{{rat(0), rat(1), rat(3)}}; // bypasses make_tight_set on purpose
    CHECK_THROWS_AS((void)g_obj(chain2, loose), input_error);

    for (const auto& p : all_posets(3)) CHECK(validate(g_obj(p, ts({0, 1, 2}))).ok());
}

TEST_CASE("phi turns level-poset embeddings into metric embeddings") {
    auto s = ts({0, 1});
    auto m = two_points(rat(1));
    auto level = share(f_obj(m, s));
    auto target = share(f_obj(m, s)); // P = F(M)
    auto u = identity(level);
    u.target = target;
    auto image = phi(u, m, s);
    CHECK(is_embedding(m, *image.target, image.map));
    CHECK(image.map == std::vector<int>{0, 1}); // (u(x,0)) picks the level-0 copy

    for (const auto& p : all_posets(4)) {
        auto pr = share(p);
        for (const auto& emb : enumerate_embeddings(level, pr)) {
            auto img = phi(emb, m, s);
            CHECK(is_embedding(m, *img.target, img.map));
        }
    }

    Embedding bad{share(make_poset_strict(2, {{0, 1}})), target, {0, 1}};
    CHECK_THROWS_AS((void)phi(bad, m, s), input_error);
}

TEST_CASE("phi reports the embedding failure on a non-arithmetic scale") {
    // s1 + s1 > s2 here, so level-0 comparability cannot certify distance 2
    auto s = ts({0, 2, 3, 4});
    auto m = two_points(rat(2));
    auto level = share(f_obj(m, s));
    REQUIRE(validate(*level).ok());
    auto u = identity(level);
    CHECK_THROWS_AS((void)phi(u, m, s), internal_inconsistency);
}

TEST_CASE("f_mor relabels points level by level") {
    auto s = ts({0, 1});
    auto one = share(make_metric(1, {rat(0)}));
    auto two = share(two_points(rat(1)));
    auto f = enumerate_embeddings(one, two)[1]; // 0 -> 1
    auto lifted = f_mor(f, s);
    CHECK(lifted.map == std::vector<int>{1, 3});
    CHECK(is_embedding(*lifted.source, *lifted.target, lifted.map));

    auto idm = identity(two);
    CHECK(f_mor(idm, s).map == std::vector<int>{0, 1, 2, 3});

    auto g = enumerate_embeddings(two, two)[0];
    CHECK(f_mor(compose(f, g), s).map == compose(f_mor(f, s), f_mor(g, s)).map);
}

TEST_CASE("cpa1 equation holds on exhaustive small instances") {
    auto s = ts({0, 1, 2});
    std::vector<StructureRef> spaces;
    for (int n = 0; n <= 2; ++n)
        for (auto& m : all_metrics(n, std::vector<Rational>{rat(1), rat(2)}))
            spaces.push_back(share(std::move(m)));
    for (const auto& md : spaces) {
        if (md->n > 1) continue; // two-point spaces are covered by the full sweep
        auto level = share(f_obj(*md, s));
        for (int sz = level->n; sz <= level->n + 1; ++sz)
            for (const auto& p : all_posets(sz)) {
                auto pr = share(p);
                for (const auto& u : enumerate_embeddings(level, pr))
                    for (const auto& me : spaces)
                        for (const auto& f : enumerate_embeddings(me, md))
                            CHECK(cpa1_check(u, f, s));
            }
    }
}

TEST_CASE("cpa2 projection keeps first coordinates") {
    CHECK(cpa2_project(std::vector<int>{}, 2).empty());
    CHECK(cpa2_project(std::vector<int>{0, 4}, 2) == std::vector<int>{0});
    CHECK(cpa2_project(std::vector<int>{1, 2, 5}, 2) == std::vector<int>{0, 1});
    CHECK(cpa2_project(std::vector<int>{3}, 2) == std::vector<int>{1});
    CHECK_THROWS_AS((void)cpa2_project(std::vector<int>{0}, 0), input_error);
    CHECK_THROWS_AS((void)cpa2_project(std::vector<int>{-1}, 2), input_error);
}

TEST_CASE("coloring pull-back and witness transfer across the pre-adjunction") {
    auto s = ts({0, 1});
    auto e = make_metric(1, {rat(0)});
    auto d_space = two_points(rat(1));
    auto c = f_obj(d_space, s);

    auto level_e = share(f_obj(e, s));
    auto hom_ec = enumerate_embeddings(level_e, share(c));
    REQUIRE(hom_ec.size() == 4);
    auto gc = g_obj(c, s);
    auto hom_e_gc = enumerate_embeddings(e, gc);
    REQUIRE(hom_e_gc.size() == 4);

    for (const auto& chi : enumerate_colorings(4, 100)) {
        auto chi_prime = cpa_chi_prime(chi, e, c, s);
        REQUIRE(chi_prime.colors.size() == hom_ec.size());
        // chi'(u) = chi(phi(u)) by definition
        for (std::size_t ui = 0; ui < hom_ec.size(); ++ui) {
            auto img = phi(hom_ec[ui], e, s);
            int idx = hom_index(hom_e_gc, img.map);
            REQUIRE(idx >= 0);
            CHECK(chi_prime.colors[ui] == chi.colors[idx]);
        }

        auto wit_c = find_canonical_witness(chi_prime, level_e, share(f_obj(d_space, s)),
                                            share(c));
        if (!wit_c) continue;
        auto wit_d = cpa_transfer_witness(chi, *wit_c, e, d_space, s);

        std::vector<std::vector<int>> ed_maps, egc_maps;
        for (const auto& x : enumerate_embeddings(e, d_space)) ed_maps.push_back(x.map);
        for (const auto& x : hom_e_gc) egc_maps.push_back(x.map);
        CHECK(oracle::is_witness(chi.colors, ed_maps, egc_maps, wit_d.w.map, wit_d.positions));
    }
}

TEST_CASE("constant colorings transfer with an empty position set") {
    auto s = ts({0, 1});
    auto e = make_metric(1, {rat(0)});
    auto d_space = two_points(rat(1));
    auto c = f_obj(d_space, s);
    Coloring constant{{0, 0, 0, 0}};
    auto chi_prime = cpa_chi_prime(constant, e, c, s);
    for (int col : chi_prime.colors) CHECK(col == 0);
    auto wit_c = find_canonical_witness(chi_prime, share(f_obj(e, s)),
                                        share(f_obj(d_space, s)), share(c));
    REQUIRE(wit_c.has_value());
    CHECK(wit_c->positions.empty());
    auto wit_d = cpa_transfer_witness(constant, *wit_c, e, d_space, s);
    CHECK(wit_d.positions.empty());
}

TEST_CASE("cpa sweep runs green over arithmetic scales") {
    CpaSweepOptions opts;
    opts.max_points = 2;
    opts.scales = {ts({0, 1})};
    auto report = run_cpa_sweep(opts);
    CHECK(report.ok);
    CHECK(report.first_failure.empty());
    CHECK(report.fobj_checked == 3);  // metric spaces on 0, 1, 2 points over {1}
    CHECK(report.gobj_checked == 51); // posets up to the largest level size 4
    CHECK(report.fobj_checked == report.fobj_valid);
    CHECK(report.gobj_checked == report.gobj_valid);
    CHECK(report.phi_checked == report.phi_valid);
    CHECK(report.cpa1_checked == report.cpa1_ok);
    CHECK(report.cpa2_checked == report.cpa2_ok);
    CHECK(report.phi_checked > 0);
    CHECK(report.cpa1_checked > 0);
    CHECK(report.cpa2_checked > 0);

    for (int workers : {2, 8}) {
        CpaSweepOptions par = opts;
        par.workers = workers;
        CHECK(run_cpa_sweep(par) == report);
    }
}
