#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "canram/canonical.hpp"
#include "canram/diagram.hpp"
#include "canram/errors.hpp"
#include "canram/json_io.hpp"
#include "canram/preadjunction.hpp"
#include "canram/transfers.hpp"

using namespace canram;

namespace {

OrderedStructure sample_metric() {
    auto one = rat(1);
    auto half3 = rat(3, 2);
    return make_metric(3, {rat(0), one, half3, one, rat(0), one, half3, one, rat(0)});
}

} // namespace

TEST_CASE("structures round trip through json") {
    std::vector<OrderedStructure> all;
    all.push_back(make_chain(3));
    all.push_back(make_graph(3, {{0, 1}, {1, 2}}));
    all.push_back(make_hypergraph(3, {2, 3}, {{{0, 1}}, {{0, 1, 2}}}));
    all.push_back(make_digraph_up(3, {{0, 2}}));
    all.push_back(make_tournament(3, {{0, 1}, {1, 2}, {0, 2}}));
    all.push_back(make_poset_strict(3, {{0, 1}}));
    all.push_back(sample_metric());
    all.push_back(make_relational(3, {1, 2}, {{{0}}, {{0, 1}, {1, 2}}}));

    for (const auto& s : all) {
        auto j = structure_to_json(s);
        CHECK_FALSE(j.contains("indexing"));
        CHECK(structure_from_json(j) == s);
        CHECK(j.dump() == structure_to_json(s).dump());
    }
}

TEST_CASE("one-based indexing shifts positions but not sizes or arities") {
    JsonOptions one{1};

    auto g = make_graph(2, {{0, 1}});
    auto jg = structure_to_json(g, one);
    CHECK(jg["indexing"] == 1);
    CHECK(jg["n"] == 2);
    CHECK(jg["edges"] == Json::array({Json::array({1, 2})}));
    CHECK(structure_from_json(jg) == g);       // the embedded field wins
    CHECK(structure_from_json(jg, one) == g);

    Json bare{{"kind", "ordered_graph"}, {"n", 2}, {"edges", {{1, 2}}}};
    CHECK(structure_from_json(bare, one) == g);
    Json zero_edge{{"kind", "ordered_graph"}, {"n", 2}, {"edges", {{0, 1}}}};
    CHECK_THROWS_AS((void)structure_from_json(zero_edge, one), input_error);

    auto h = make_hypergraph(3, {2}, {{{0, 2}}});
    auto jh = structure_to_json(h, one);
    CHECK(jh["arities"] == Json::array({2}));
    CHECK(jh["families"] == Json::array({Json::array({Json::array({1, 3})})}));
    CHECK(structure_from_json(jh) == h);

    auto r = make_relational(2, {2}, {{{0, 1}}});
    auto jr = structure_to_json(r, one);
    CHECK(jr["arities"] == Json::array({2}));
    CHECK(jr["relations"][0][0] == Json::array({1, 2}));
    CHECK(structure_from_json(jr) == r);

    auto m = sample_metric();
    auto jm = structure_to_json(m, one);
    CHECK(jm["d"][0][1] == Json{{"num", 1}, {"den", 1}});
    CHECK(structure_from_json(jm) == m);

    auto p = make_poset_strict(2, {{0, 1}});
    auto jp = structure_to_json(p, one);
    CHECK(jp["leq"] == Json::array({{1, 1}, {1, 2}, {2, 2}}));
    CHECK(structure_from_json(jp) == p);
}

TEST_CASE("structure parsing rejects malformed input") {
    CHECK_THROWS_AS((void)structure_from_json(Json{{"n", 2}}), input_error);
    CHECK_THROWS_AS((void)structure_from_json(Json{{"kind", 7}, {"n", 2}}), input_error);
    CHECK_THROWS_AS((void)structure_from_json(Json{{"kind", "florb"}, {"n", 2}}), input_error);
    CHECK_THROWS_AS((void)structure_from_json(Json{{"kind", "chain"}, {"n", -1}}), input_error);
    CHECK_THROWS_AS((void)structure_from_json(Json{{"kind", "chain"}}), input_error);
    CHECK_THROWS_AS((void)structure_from_json(Json{{"kind", "ordered_graph"}, {"n", 2}}),
                    input_error);
    CHECK_THROWS_AS((void)structure_from_json(
                        Json{{"kind", "ordered_graph"}, {"n", 2}, {"edges", "x"}}),
                    input_error);
    CHECK_THROWS_AS((void)structure_from_json(Json{{"kind", "chain"}, {"n", 1}, {"indexing", 2}}),
                    input_error);
    Json short_metric{{"kind", "ordered_metric"}, {"n", 2}, {"d", Json::array()}};
    CHECK_THROWS_AS((void)structure_from_json(short_metric), input_error);
}

TEST_CASE("rationals serialize as num/den and accept bare integers") {
    CHECK(rational_to_json(rat(1, 2)) == Json{{"num", 1}, {"den", 2}});
    CHECK(rational_to_json(rat(4)) == Json{{"num", 4}, {"den", 1}});
    CHECK(rational_from_json(Json(3)) == rat(3));
    CHECK(rational_from_json(Json{{"num", 2}, {"den", 4}}) == rat(1, 2));
    CHECK(rational_from_json(Json{{"num", -3}, {"den", 7}}) == rat(-3, 7));
    CHECK_THROWS_AS((void)rational_from_json(Json{{"num", 1}, {"den", 0}}), input_error);
    CHECK_THROWS_AS((void)rational_from_json(Json{{"num", 1}, {"den", -2}}), input_error);
    CHECK_THROWS_AS((void)rational_from_json(Json{{"num", 1}}), input_error);
    CHECK_THROWS_AS((void)rational_from_json(Json("x")), input_error);
}

TEST_CASE("embedding maps accept both bare and wrapped forms") {
    std::vector<int> map{0, 2};
    CHECK(embedding_map_to_json(map) == Json{{"map", {0, 2}}});
    CHECK(embedding_map_from_json(Json::array({0, 2})) == map);
    CHECK(embedding_map_from_json(Json{{"map", {0, 2}}}) == map);

    JsonOptions one{1};
    CHECK(embedding_map_to_json(map, one) == Json{{"map", {1, 3}}});
    CHECK(embedding_map_from_json(Json::array({1, 3}), one) == map);
    CHECK_THROWS_AS((void)embedding_map_from_json(Json{{"x", 1}}), input_error);
    CHECK_THROWS_AS((void)embedding_map_from_json(Json::array({0}), one), input_error);
}

TEST_CASE("colorings keep their ids under any indexing") {
    Coloring c{{0, 1, 0}};
    CHECK(coloring_to_json(c) == Json{{"colors", {0, 1, 0}}});
    CHECK(coloring_from_json(Json::array({0, 1, 0})).colors == c.colors);
    CHECK(coloring_from_json(Json{{"colors", {0, 1, 0}}}).colors == c.colors);
    CHECK_THROWS_AS((void)coloring_from_json(Json{{"x", 1}}), input_error);
}

TEST_CASE("tight sets parse from arrays and validate their shape") {
    auto s = tight_set_from_json(Json::array({0, 1, 2}));
    CHECK(s.values == std::vector<Rational>{rat(0), rat(1), rat(2)});
    CHECK(tight_set_to_json(s) ==
          Json::array({Json{{"num", 0}, {"den", 1}}, Json{{"num", 1}, {"den", 1}},
                       Json{{"num", 2}, {"den", 1}}}));

    auto with_fraction = tight_set_from_json(Json::array({0, 1, Json{{"num", 3}, {"den", 2}}}));
    CHECK(with_fraction.values.back() == rat(3, 2));
    CHECK(tight_set_from_json(Json{{"values", {0, 1}}}).values.size() == 2);

    CHECK_THROWS_AS((void)tight_set_from_json(Json::array({1, 2})), input_error);
    CHECK_THROWS_AS((void)tight_set_from_json(Json::array({0, 2, 1})), input_error);
    CHECK_THROWS_AS((void)tight_set_from_json(Json::array({0, 1, 1})), input_error);
    CHECK_THROWS_AS((void)tight_set_from_json(Json::array({0, 1, 3})), input_error);
    CHECK_THROWS_AS((void)tight_set_from_json(Json("x")), input_error);
}

TEST_CASE("witnesses serialize with shifted positions") {
    auto b = share(make_chain(2));
    auto c = share(make_chain(3));
    CanonicalWitness wit{Embedding{b, c, {0, 1}}, {0}};
    CHECK(witness_to_json(wit) == Json{{"w", {{"map", {0, 1}}}}, {"positions", {0}}});
    CHECK(witness_to_json(wit, JsonOptions{1}) ==
          Json{{"w", {{"map", {1, 2}}}}, {"positions", {1}}});
}

TEST_CASE("verdicts and search reports expose the counterexample") {
    auto v = verify_can_arrow(share(make_chain(1)), share(make_chain(3)), share(make_chain(4)));
    auto j = verdict_to_json(v);
    CHECK(j["outcome"] == "fails");
    CHECK(j["counterexample"] == Json{{"colors", {0, 0, 1, 1}}});
    CHECK(j["counterexample_index"] == 3);
    CHECK(j["total_colorings"] == 15);

    auto held = verify_can_arrow(share(make_chain(1)), share(make_chain(2)), share(make_chain(2)));
    auto jh = verdict_to_json(held);
    CHECK(jh["outcome"] == "holds");
    CHECK(jh["counterexample"].is_null());
    CHECK(jh["counterexample_index"].is_null());

    auto r = erc_report_to_json(erc_search(1, 2, 4));
    CHECK(r["k"] == 1);
    CHECK(r["m"] == 2);
    CHECK(r["n_max"] == 4);
    CHECK(r["n"] == 2);
    REQUIRE(r["steps"].size() == 1);
    CHECK(r["steps"][0]["n"] == 2);
    CHECK(r["steps"][0]["outcome"] == "holds");
    CHECK(r["steps"][0]["counterexample"].is_null());
}

TEST_CASE("encoding signatures round trip and reject tampered items") {
    auto enc = EncodingSignature::for_arities({2});
    auto j = encoding_signature_to_json(enc);
    CHECK(j["base_arities"] == Json::array({2}));
    REQUIRE(j["items"].size() == 3);
    CHECK(j["items"][0] == Json{{"rel", 0}, {"sigma", "00"}});
    CHECK(j["items"][1] == Json{{"rel", 0}, {"sigma", "01"}});
    CHECK(j["items"][2] == Json{{"rel", 0}, {"sigma", "10"}});

    auto back = encoding_signature_from_json(j);
    CHECK(back.items.size() == enc.items.size());
    CHECK(encoding_signature_to_json(back) == j);

    auto tampered = j;
    tampered["items"][0]["sigma"] = "01";
    CHECK_THROWS_AS((void)encoding_signature_from_json(tampered), input_error);

    Json bare{{"base_arities", {2}}};
    CHECK(encoding_signature_to_json(encoding_signature_from_json(bare)) == j);
}

TEST_CASE("compression results list kept positions and the regrouping map") {
    auto part = make_hypergraph(2, {2, 2}, {{{0, 1}}, {{0, 1}}});
    auto out = compress_signature(std::vector<OrderedStructure>{part});
    auto j = compression_to_json(out);
    CHECK(j["kept"] == Json::array({0}));
    CHECK(j["g"] == Json{{"0", 0}, {"1", 0}});
    REQUIRE(j["reducts"].size() == 1);
    CHECK(structure_from_json(j["reducts"][0]) == out.reducts[0]);
}

TEST_CASE("validation reports name the broken axiom") {
    auto ok = validation_to_json(validate(make_chain(2)));
    CHECK(ok == Json{{"ok", true}, {"violations", Json::array()}});

    auto bad = validation_to_json(validate(make_tournament(2, {{0, 1}, {1, 0}})));
    CHECK(bad["ok"] == false);
    REQUIRE(bad["violations"].size() >= 1);
    CHECK(bad["violations"][0]["axiom"] == "exactly-one-arc");
}

TEST_CASE("diagrams and cocones serialize with shifted leg indices") {
    auto a = share(make_chain(1));
    auto b = share(make_chain(2));
    auto c = share(make_chain(3));
    auto [d, cocone] = build_binary_diagram(a, b, c);

    auto jd = diagram_to_json(d);
    CHECK(jd["n"] == 3);
    REQUIRE(jd["bottom"].size() == 6);
    CHECK(jd["bottom"][0] == Json{{"u", {0}}, {"v", {0}}, {"i", 0}, {"j", 1}});

    auto jd1 = diagram_to_json(d, JsonOptions{1});
    CHECK(jd1["bottom"][0] == Json{{"u", {1}}, {"v", {1}}, {"i", 1}, {"j", 2}});

    auto jc = cocone_to_json(cocone);
    CHECK(jc["tip"]["kind"] == "chain");
    CHECK(jc["legs"] == Json::array({{0, 1}, {0, 2}, {1, 2}}));
    CHECK(cocone_to_json(cocone, JsonOptions{1})["legs"] ==
          Json::array({{1, 2}, {1, 3}, {2, 3}}));
}

TEST_CASE("sweep reports serialize field by field") {
    CpaSweepReport cpa;
    cpa.fobj_checked = 3;
    cpa.fobj_valid = 3;
    cpa.ok = true;
    auto jc = cpa_report_to_json(cpa);
    CHECK(jc["fobj_checked"] == 3);
    CHECK(jc["ok"] == true);
    CHECK(jc["first_failure"] == "");

    TransferSweepReport tr;
    tr.instances = 28;
    tr.closure_ok = false;
    tr.first_closure_failure = "x";
    auto jt = transfer_report_to_json(tr);
    CHECK(jt["instances"] == 28);
    CHECK(jt["closure_ok"] == false);
    CHECK(jt["first_closure_failure"] == "x");
}

TEST_CASE("file helpers wrap io and parse failures") {
    const std::string path = "json_io_test_tmp.json";
    Json j{{"kind", "chain"}, {"n", 2}};
    save_json(path, j);
    CHECK(load_json(path) == j);

    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    CHECK(text.back() == '\n');

    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS((void)load_json(path), input_error);
    std::remove(path.c_str());

    CHECK_THROWS_AS((void)load_json("does_not_exist_anywhere.json"), input_error);
    CHECK_THROWS_AS((void)save_json("no_such_dir/out.json", j), input_error);
}
