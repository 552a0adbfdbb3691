#include "canram/json_io.hpp"

#include <fstream>

#include "canram/errors.hpp"

namespace canram {

namespace {

const Json& need(const Json& j, const char* key) {
    if (!j.is_object())
        throw input_error(std::string("expected an object with field '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw input_error(std::string("missing field '") + key + "'");
    return *it;
}

long long need_integer(const Json& j, const char* what) {
    if (!j.is_number_integer())
        throw input_error(std::string(what) + ": expected an integer");
    return j.get<long long>();
}

int shifted_in(const Json& j, int base, const char* what) {
    const long long raw = need_integer(j, what);
    const long long v = raw - base;
    if (v < 0)
        throw input_error(std::string(what) + ": index " + std::to_string(raw) +
                          " is below the indexing base");
    return static_cast<int>(v);
}

std::vector<int> int_list_in(const Json& j, int base, const char* what) {
    if (!j.is_array()) throw input_error(std::string(what) + ": expected an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& item : j) out.push_back(shifted_in(item, base, what));
    return out;
}

Json int_list_out(std::span<const int> values, int base) {
    Json out = Json::array();
    for (int v : values) out.push_back(v + base);
    return out;
}

std::vector<Pair> pair_list_in(const Json& j, int base, const char* what) {
    if (!j.is_array()) throw input_error(std::string(what) + ": expected an array of pairs");
    std::vector<Pair> out;
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2)
            throw input_error(std::string(what) + ": each entry must be a pair");
        out.push_back({shifted_in(item[0], base, what), shifted_in(item[1], base, what)});
    }
    return out;
}

Json pair_list_out(const std::vector<Pair>& pairs, int base) {
    Json out = Json::array();
    for (const auto& [a, b] : pairs) out.push_back(Json::array({a + base, b + base}));
    return out;
}

} // namespace

Json rational_to_json(const Rational& r) {
    return Json{{"num", r.numerator()}, {"den", r.denominator()}};
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return rat(j.get<long long>());
    const long long num = need_integer(need(j, "num"), "num");
    const long long den = need_integer(need(j, "den"), "den");
    if (den <= 0) throw input_error("rational: denominator must be positive");
    return rat(num, den);
}

Json structure_to_json(const OrderedStructure& s, const JsonOptions& opts) {
    const int base = opts.indexing;
    Json j{{"kind", kind_name(s.kind)}, {"n", s.n}};
    if (base != 0) j["indexing"] = base;
    switch (s.kind) {
        case Kind::Chain:
            break;
        case Kind::OrderedGraph:
            j["edges"] = pair_list_out(s.graph().edges, base);
            break;
        case Kind::Hypergraph: {
            j["arities"] = s.hypergraph().arities;
            Json families = Json::array();
            for (const auto& fam : s.hypergraph().families) {
                Json edges = Json::array();
                for (const auto& e : fam) edges.push_back(int_list_out(e, base));
                families.push_back(std::move(edges));
            }
            j["families"] = std::move(families);
            break;
        }
        case Kind::ReflexiveDigraphLE:
            j["rho"] = pair_list_out(s.digraph().rho, base);
            break;
        case Kind::Tournament:
            j["arcs"] = pair_list_out(s.tournament().arcs, base);
            break;
        case Kind::PosetLE:
            j["leq"] = pair_list_out(s.poset().leq, base);
            break;
        case Kind::OrderedMetric: {
            Json rows = Json::array();
            for (int x = 0; x < s.n; ++x) {
                Json row = Json::array();
                for (int y = 0; y < s.n; ++y)
                    row.push_back(
                        rational_to_json(s.metric().d[static_cast<std::size_t>(x) * s.n + y]));
                rows.push_back(std::move(row));
            }
            j["d"] = std::move(rows);
            break;
        }
        case Kind::Relational: {
            j["arities"] = s.relational().arities;
            Json relations = Json::array();
            for (const auto& rel : s.relational().relations) {
                Json tuples = Json::array();
                for (const auto& t : rel) tuples.push_back(int_list_out(t, base));
                relations.push_back(std::move(tuples));
            }
            j["relations"] = std::move(relations);
            break;
        }
    }
    return j;
}

OrderedStructure structure_from_json(const Json& j, const JsonOptions& opts) {
    const std::string name = need(j, "kind").is_string()
                                 ? need(j, "kind").get<std::string>()
                                 : throw input_error("kind: expected a string");
    const auto kind = kind_from_name(name);
    if (!kind) throw input_error("unknown kind '" + name + "'");
    const long long n = need_integer(need(j, "n"), "n");
    if (n < 0) throw input_error("n: must be nonnegative");
    int base = opts.indexing;
    if (auto it = j.find("indexing"); it != j.end())
        base = static_cast<int>(need_integer(*it, "indexing"));
    if (base != 0 && base != 1) throw input_error("indexing: must be 0 or 1");

    const int nn = static_cast<int>(n);
    switch (*kind) {
        case Kind::Chain:
            return make_chain(nn);
        case Kind::OrderedGraph:
            return make_graph(nn, pair_list_in(need(j, "edges"), base, "edges"));
        case Kind::Hypergraph: {
            std::vector<int> arities = int_list_in(need(j, "arities"), 0, "arities");
            const Json& fams = need(j, "families");
            if (!fams.is_array()) throw input_error("families: expected an array");
            std::vector<EdgeFamily> families;
            for (const auto& fam : fams) {
                if (!fam.is_array()) throw input_error("families: each family is an array");
                EdgeFamily f;
                for (const auto& e : fam) f.push_back(int_list_in(e, base, "edge"));
                families.push_back(std::move(f));
            }
            return make_hypergraph(nn, std::move(arities), std::move(families));
        }
        case Kind::ReflexiveDigraphLE:
            return make_digraph(nn, pair_list_in(need(j, "rho"), base, "rho"));
        case Kind::Tournament:
            return make_tournament(nn, pair_list_in(need(j, "arcs"), base, "arcs"));
        case Kind::PosetLE:
            return make_poset(nn, pair_list_in(need(j, "leq"), base, "leq"));
        case Kind::OrderedMetric: {
            const Json& rows = need(j, "d");
            if (!rows.is_array() || static_cast<long long>(rows.size()) != n)
                throw input_error("d: expected " + std::to_string(n) + " rows");
            std::vector<Rational> d;
            d.reserve(static_cast<std::size_t>(n) * n);
            for (const auto& row : rows) {
                if (!row.is_array() || static_cast<long long>(row.size()) != n)
                    throw input_error("d: expected square matrix rows");
                for (const auto& cell : row) d.push_back(rational_from_json(cell));
            }
            return make_metric(nn, std::move(d));
        }
        case Kind::Relational: {
            std::vector<int> arities = int_list_in(need(j, "arities"), 0, "arities");
            const Json& rels = need(j, "relations");
            if (!rels.is_array()) throw input_error("relations: expected an array");
            std::vector<TupleFamily> relations;
            for (const auto& rel : rels) {
                if (!rel.is_array()) throw input_error("relations: each relation is an array");
                TupleFamily r;
                for (const auto& t : rel) r.push_back(int_list_in(t, base, "tuple"));
                relations.push_back(std::move(r));
            }
            return make_relational(nn, std::move(arities), std::move(relations));
        }
    }
    throw input_error("unknown kind");
}

Json embedding_map_to_json(std::span<const int> map, const JsonOptions& opts) {
    return Json{{"map", int_list_out(map, opts.indexing)}};
}

std::vector<int> embedding_map_from_json(const Json& j, const JsonOptions& opts) {
    if (j.is_array()) return int_list_in(j, opts.indexing, "map");
    return int_list_in(need(j, "map"), opts.indexing, "map");
}

Json coloring_to_json(const Coloring& c) { return Json{{"colors", c.colors}}; }

Coloring coloring_from_json(const Json& j) {
    const Json& colors = j.is_array() ? j : need(j, "colors");
    Coloring out;
    out.colors = int_list_in(colors, 0, "colors");
    return out;
}

Json tight_set_to_json(const TightSet& s) {
    Json values = Json::array();
    for (const auto& v : s.values) values.push_back(rational_to_json(v));
    return values;
}

TightSet tight_set_from_json(const Json& j) {
    const Json& values = j.is_array() ? j : need(j, "values");
    if (!values.is_array()) throw input_error("tight set: expected an array");
    std::vector<Rational> out;
    for (const auto& v : values) out.push_back(rational_from_json(v));
    return make_tight_set(std::move(out));
}

Json witness_to_json(const CanonicalWitness& w, const JsonOptions& opts) {
    return Json{{"w", embedding_map_to_json(w.w.map, opts)},
                {"positions", int_list_out(w.positions, opts.indexing)}};
}

Json verdict_to_json(const CanVerdict& v) {
    Json j{{"outcome", outcome_name(v.outcome)},
           {"colorings_examined", v.colorings_examined},
           {"total_colorings", v.total_colorings}};
    j["counterexample"] = v.counterexample ? coloring_to_json(*v.counterexample) : Json(nullptr);
    j["counterexample_index"] =
        v.counterexample_index ? Json(*v.counterexample_index) : Json(nullptr);
    return j;
}

Json erc_report_to_json(const ErcReport& r) {
    Json steps = Json::array();
    for (const auto& step : r.steps) {
        Json s{{"n", step.n},
               {"outcome", outcome_name(step.outcome)},
               {"colorings_examined", step.colorings_examined},
               {"total_colorings", step.total_colorings}};
        s["counterexample"] =
            step.counterexample ? coloring_to_json(*step.counterexample) : Json(nullptr);
        steps.push_back(std::move(s));
    }
    return Json{{"k", r.k},
                {"m", r.m},
                {"n_max", r.n_max},
                {"n", r.found_n ? Json(*r.found_n) : Json(nullptr)},
                {"steps", std::move(steps)}};
}

Json encoding_signature_to_json(const EncodingSignature& e) {
    Json items = Json::array();
    for (const auto& item : e.items)
        items.push_back(Json{{"rel", item.rel}, {"sigma", item.sigma.rgs_string()}});
    return Json{{"base_arities", e.base_arities}, {"items", std::move(items)}};
}

EncodingSignature encoding_signature_from_json(const Json& j) {
    std::vector<int> base = int_list_in(need(j, "base_arities"), 0, "base_arities");
    int cap = kDefaultArityCap;
    if (auto it = j.find("cap"); it != j.end())
        cap = static_cast<int>(need_integer(*it, "cap"));
    EncodingSignature enc = EncodingSignature::for_arities(std::move(base), cap);
    if (auto it = j.find("items"); it != j.end()) {
        const Json expected = encoding_signature_to_json(enc)["items"];
        if (*it != expected)
            throw input_error("encoding signature items do not match the declared arities");
    }
    return enc;
}

Json compression_to_json(const CompressionResult& c) {
    Json g = Json::object();
    for (std::size_t i = 0; i < c.g.size(); ++i) g[std::to_string(i)] = c.g[i];
    Json reducts = Json::array();
    for (const auto& r : c.reducts) reducts.push_back(structure_to_json(r));
    return Json{{"kept", c.kept}, {"g", std::move(g)}, {"reducts", std::move(reducts)}};
}

Json validation_to_json(const ValidationReport& r) {
    Json violations = Json::array();
    for (const auto& v : r.violations)
        violations.push_back(Json{{"axiom", v.axiom}, {"detail", v.detail}});
    return Json{{"ok", r.ok()}, {"violations", std::move(violations)}};
}

Json diagram_to_json(const BinaryDiagram& d, const JsonOptions& opts) {
    const int base = opts.indexing;
    Json bottom = Json::array();
    for (const auto& node : d.bottom)
        bottom.push_back(Json{{"u", int_list_out(node.u.map, base)},
                              {"v", int_list_out(node.v.map, base)},
                              {"i", node.i + base},
                              {"j", node.j + base}});
    return Json{{"n", d.top_count}, {"bottom", std::move(bottom)}};
}

Json cocone_to_json(const Cocone& c, const JsonOptions& opts) {
    Json legs = Json::array();
    for (const auto& leg : c.legs) legs.push_back(int_list_out(leg.map, opts.indexing));
    return Json{{"tip", structure_to_json(*c.tip, opts)}, {"legs", std::move(legs)}};
}

Json cpa_report_to_json(const CpaSweepReport& r) {
    return Json{{"fobj_checked", r.fobj_checked},   {"fobj_valid", r.fobj_valid},
                {"gobj_checked", r.gobj_checked},   {"gobj_valid", r.gobj_valid},
                {"phi_checked", r.phi_checked},     {"phi_valid", r.phi_valid},
                {"cpa1_checked", r.cpa1_checked},   {"cpa1_ok", r.cpa1_ok},
                {"cpa2_checked", r.cpa2_checked},   {"cpa2_ok", r.cpa2_ok},
                {"ok", r.ok},                       {"first_failure", r.first_failure}};
}

Json transfer_report_to_json(const TransferSweepReport& r) {
    return Json{{"instances", r.instances},
                {"tips_valid", r.tips_valid},
                {"cocones_commuting", r.cocones_commuting},
                {"legs_checked", r.legs_checked},
                {"legs_valid", r.legs_valid},
                {"colorings", r.colorings},
                {"transfers_disjoint", r.transfers_disjoint},
                {"witnesses_found", r.witnesses_found},
                {"witnesses_valid", r.witnesses_valid},
                {"closure_ok", r.closure_ok},
                {"transfer_ok", r.transfer_ok},
                {"witness_ok", r.witness_ok},
                {"first_closure_failure", r.first_closure_failure},
                {"first_transfer_failure", r.first_transfer_failure},
                {"first_witness_failure", r.first_witness_failure}};
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& ex) {
        throw input_error("malformed JSON in '" + path + "': " + ex.what());
    }
}

void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

} // namespace canram
