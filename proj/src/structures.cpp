#include "canram/structures.hpp"

#include <algorithm>
#include <sstream>

#include "canram/errors.hpp"

namespace canram {

namespace {

void sort_unique(std::vector<Pair>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <typename T>
void sort_unique(std::vector<std::vector<T>>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string pair_str(int a, int b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::string list_str(std::span<const int> xs) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
    os << "]";
    return os.str();
}

} // namespace

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Chain: return "chain";
        case Kind::OrderedGraph: return "ordered_graph";
        case Kind::Hypergraph: return "hypergraph";
        case Kind::ReflexiveDigraphLE: return "reflexive_digraph_le";
        case Kind::Tournament: return "tournament";
        case Kind::PosetLE: return "poset_le";
        case Kind::OrderedMetric: return "ordered_metric";
        case Kind::Relational: return "relational";
    }
    return "?";
}

std::optional<Kind> kind_from_name(const std::string& name) {
    for (Kind k : {Kind::Chain, Kind::OrderedGraph, Kind::Hypergraph, Kind::ReflexiveDigraphLE,
                   Kind::Tournament, Kind::PosetLE, Kind::OrderedMetric, Kind::Relational})
        if (name == kind_name(k)) return k;
    return std::nullopt;
}

OrderedStructure make_chain(int n) { return {Kind::Chain, n, ChainPayload{}}; }

OrderedStructure make_graph(int n, std::vector<Pair> edges) {
    for (auto& [a, b] : edges)
        if (a > b) std::swap(a, b);
    sort_unique(edges);
    return {Kind::OrderedGraph, n, OrderedGraphPayload{std::move(edges)}};
}

OrderedStructure make_hypergraph(int n, std::vector<int> arities, std::vector<EdgeFamily> families) {
    if (families.size() != arities.size())
        throw input_error("hypergraph: arity list and family list differ in length");
    for (auto& fam : families) {
        for (auto& e : fam) std::sort(e.begin(), e.end());
        sort_unique(fam);
    }
    return {Kind::Hypergraph, n, HypergraphPayload{std::move(arities), std::move(families)}};
}

OrderedStructure make_digraph(int n, std::vector<Pair> rho) {
    sort_unique(rho);
    return {Kind::ReflexiveDigraphLE, n, ReflexiveDigraphPayload{std::move(rho)}};
}

OrderedStructure make_digraph_up(int n, std::vector<Pair> arcs) {
    for (int x = 0; x < n; ++x) arcs.emplace_back(x, x);
    return make_digraph(n, std::move(arcs));
}

OrderedStructure make_tournament(int n, std::vector<Pair> arcs) {
    sort_unique(arcs);
    return {Kind::Tournament, n, TournamentPayload{std::move(arcs)}};
}

OrderedStructure make_poset(int n, std::vector<Pair> leq) {
    sort_unique(leq);
    return {Kind::PosetLE, n, PosetPayload{std::move(leq)}};
}

OrderedStructure make_poset_strict(int n, std::vector<Pair> below) {
    for (int x = 0; x < n; ++x) below.emplace_back(x, x);
    return make_poset(n, std::move(below));
}

OrderedStructure make_metric(int n, std::vector<Rational> d) {
    if (static_cast<int>(d.size()) != n * n)
        throw input_error("metric: distance matrix must have n*n entries");
    return {Kind::OrderedMetric, n, MetricPayload{std::move(d)}};
}

OrderedStructure make_relational(int n, std::vector<int> arities, std::vector<TupleFamily> relations) {
    if (relations.size() != arities.size())
        throw input_error("relational: arity list and relation list differ in length");
    for (auto& rel : relations) sort_unique(rel);
    return {Kind::Relational, n, RelationalPayload{std::move(arities), std::move(relations)}};
}

bool pair_present(const std::vector<Pair>& sorted, int a, int b) {
    return std::binary_search(sorted.begin(), sorted.end(), Pair{a, b});
}

namespace {

void check_pair_range(const std::vector<Pair>& ps, int n, ValidationReport& r) {
    for (auto [a, b] : ps)
        if (a < 0 || a >= n || b < 0 || b >= n)
            r.violations.push_back({"range", "pair " + pair_str(a, b) + " outside {0..." + std::to_string(n - 1) + "}"});
}

void validate_graph(const OrderedStructure& s, ValidationReport& r) {
    const auto& edges = s.graph().edges;
    check_pair_range(edges, s.n, r);
    for (auto [a, b] : edges) {
        if (a == b) r.violations.push_back({"no-loops", "edge " + pair_str(a, b)});
        if (a > b) r.violations.push_back({"pair-order", "edge " + pair_str(a, b) + " not stored smaller-first"});
    }
}

void validate_hypergraph(const OrderedStructure& s, ValidationReport& r) {
    const auto& p = s.hypergraph();
    for (size_t i = 0; i < p.arities.size(); ++i) {
        if (p.arities[i] < 1)
            r.violations.push_back({"arity", "family " + std::to_string(i) + " has arity " + std::to_string(p.arities[i])});
        for (const auto& e : p.families[i]) {
            if (static_cast<int>(e.size()) != p.arities[i])
                r.violations.push_back({"edge-size", "family " + std::to_string(i) + " edge " + list_str(e)});
            for (size_t t = 0; t < e.size(); ++t) {
                if (e[t] < 0 || e[t] >= s.n)
                    r.violations.push_back({"range", "family " + std::to_string(i) + " edge " + list_str(e)});
                if (t > 0 && e[t] <= e[t - 1])
                    r.violations.push_back({"edge-form", "family " + std::to_string(i) + " edge " + list_str(e) + " not a strictly increasing vertex set"});
            }
        }
    }
}

void validate_digraph(const OrderedStructure& s, ValidationReport& r) {
    const auto& rho = s.digraph().rho;
    check_pair_range(rho, s.n, r);
    for (int x = 0; x < s.n; ++x)
        if (!pair_present(rho, x, x))
            r.violations.push_back({"reflexivity", "missing loop at " + std::to_string(x)});
    for (auto [a, b] : rho)
        if (a != b && a > b)
            r.violations.push_back({"order-compatibility", "arc " + pair_str(a, b) + " points down the order"});
}

void validate_tournament(const OrderedStructure& s, ValidationReport& r) {
    const auto& arcs = s.tournament().arcs;
    check_pair_range(arcs, s.n, r);
    for (auto [a, b] : arcs)
        if (a == b) r.violations.push_back({"irreflexivity", "loop at " + std::to_string(a)});
    for (int x = 0; x < s.n; ++x)
        for (int y = x + 1; y < s.n; ++y) {
            int count = pair_present(arcs, x, y) + pair_present(arcs, y, x);
            if (count != 1)
                r.violations.push_back({"exactly-one-arc",
                                        "pair {" + std::to_string(x) + "," + std::to_string(y) + "} has " + std::to_string(count) + " arcs"});
        }
}

void validate_poset(const OrderedStructure& s, ValidationReport& r) {
    const auto& leq = s.poset().leq;
    check_pair_range(leq, s.n, r);
    for (int x = 0; x < s.n; ++x)
        if (!pair_present(leq, x, x))
            r.violations.push_back({"reflexivity", "missing loop at " + std::to_string(x)});
    for (auto [a, b] : leq) {
        if (a != b && a > b)
            r.violations.push_back({"order-compatibility", "relation " + pair_str(a, b) + " points down the order"});
        if (a != b && pair_present(leq, b, a))
            r.violations.push_back({"antisymmetry", pair_str(a, b) + " and " + pair_str(b, a) + " both present"});
    }
    for (auto [a, b] : leq)
        for (auto [c, d] : leq)
            if (b == c && !pair_present(leq, a, d))
                r.violations.push_back({"transitivity", pair_str(a, b) + " and " + pair_str(c, d) + " without " + pair_str(a, d)});
}

void validate_metric(const OrderedStructure& s, ValidationReport& r) {
    const auto& d = s.metric().d;
    const int n = s.n;
    if (static_cast<int>(d.size()) != n * n) {
        r.violations.push_back({"shape", "matrix has " + std::to_string(d.size()) + " entries, expected " + std::to_string(n * n)});
        return;
    }
    auto at = [&](int x, int y) { return d[x * n + y]; };
    for (int x = 0; x < n; ++x)
        if (at(x, x) != Rational(0))
            r.violations.push_back({"zero-diagonal", "d(" + std::to_string(x) + "," + std::to_string(x) + ") = " + to_string(at(x, x))});
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            if (at(x, y) != at(y, x))
                r.violations.push_back({"symmetry", "d" + pair_str(x, y) + " != d" + pair_str(y, x)});
            if (at(x, y) <= Rational(0))
                r.violations.push_back({"positivity off diagonal", "d" + pair_str(x, y) + " = " + to_string(at(x, y))});
        }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (at(x, z) > at(x, y) + at(y, z)) {
                    r.violations.push_back({"triangle-inequality",
                                            "d" + pair_str(x, z) + " > d" + pair_str(x, y) + " + d" + pair_str(y, z)});
                    return; // one witness is enough to fail; avoid cubic spam
                }
}

void validate_relational(const OrderedStructure& s, ValidationReport& r) {
    const auto& p = s.relational();
    for (size_t i = 0; i < p.arities.size(); ++i) {
        if (p.arities[i] < 1)
            r.violations.push_back({"arity", "relation " + std::to_string(i) + " has arity " + std::to_string(p.arities[i])});
        for (const auto& t : p.relations[i]) {
            if (static_cast<int>(t.size()) != p.arities[i])
                r.violations.push_back({"tuple-length", "relation " + std::to_string(i) + " tuple " + list_str(t)});
            for (int v : t)
                if (v < 0 || v >= s.n) {
                    r.violations.push_back({"range", "relation " + std::to_string(i) + " tuple " + list_str(t)});
                    break;
                }
        }
    }
}

} // namespace

ValidationReport validate(const OrderedStructure& s) {
    ValidationReport r;
    if (s.n < 0) {
        r.violations.push_back({"size", "n = " + std::to_string(s.n)});
        return r;
    }
    switch (s.kind) {
        case Kind::Chain: break;
        case Kind::OrderedGraph: validate_graph(s, r); break;
        case Kind::Hypergraph: validate_hypergraph(s, r); break;
        case Kind::ReflexiveDigraphLE: validate_digraph(s, r); break;
        case Kind::Tournament: validate_tournament(s, r); break;
        case Kind::PosetLE: validate_poset(s, r); break;
        case Kind::OrderedMetric: validate_metric(s, r); break;
        case Kind::Relational: validate_relational(s, r); break;
    }
    return r;
}

namespace {

// position of value v inside the strictly increasing list, or -1
int index_in(std::span<const int> positions, int v) {
    auto it = std::lower_bound(positions.begin(), positions.end(), v);
    if (it == positions.end() || *it != v) return -1;
    return static_cast<int>(it - positions.begin());
}

std::vector<Pair> induced_pairs(const std::vector<Pair>& ps, std::span<const int> pos) {
    std::vector<Pair> out;
    for (auto [a, b] : ps) {
        int ia = index_in(pos, a), ib = index_in(pos, b);
        if (ia >= 0 && ib >= 0) out.emplace_back(ia, ib);
    }
    return out;
}

} // namespace

OrderedStructure induced(const OrderedStructure& s, std::span<const int> positions) {
    for (size_t i = 0; i < positions.size(); ++i) {
        if (positions[i] < 0 || positions[i] >= s.n)
            throw input_error("induced: position " + std::to_string(positions[i]) + " out of range");
        if (i > 0 && positions[i] <= positions[i - 1])
            throw input_error("induced: positions must be strictly increasing");
    }
    const int m = static_cast<int>(positions.size());
    switch (s.kind) {
        case Kind::Chain:
            return make_chain(m);
        case Kind::OrderedGraph:
            return make_graph(m, induced_pairs(s.graph().edges, positions));
        case Kind::Hypergraph: {
            const auto& p = s.hypergraph();
            std::vector<EdgeFamily> fams(p.families.size());
            for (size_t i = 0; i < p.families.size(); ++i)
                for (const auto& e : p.families[i]) {
                    Edge img;
                    img.reserve(e.size());
                    bool inside = true;
                    for (int v : e) {
                        int iv = index_in(positions, v);
                        if (iv < 0) { inside = false; break; }
                        img.push_back(iv);
                    }
                    if (inside) fams[i].push_back(std::move(img));
                }
            return make_hypergraph(m, p.arities, std::move(fams));
        }
        case Kind::ReflexiveDigraphLE:
            return make_digraph(m, induced_pairs(s.digraph().rho, positions));
        case Kind::Tournament:
            return make_tournament(m, induced_pairs(s.tournament().arcs, positions));
        case Kind::PosetLE:
            return make_poset(m, induced_pairs(s.poset().leq, positions));
        case Kind::OrderedMetric: {
            const auto& d = s.metric().d;
            std::vector<Rational> sub(static_cast<size_t>(m) * m, Rational(0));
            for (int x = 0; x < m; ++x)
                for (int y = 0; y < m; ++y)
                    sub[x * m + y] = d[positions[x] * s.n + positions[y]];
            return make_metric(m, std::move(sub));
        }
        case Kind::Relational: {
            const auto& p = s.relational();
            std::vector<TupleFamily> rels(p.relations.size());
            for (size_t i = 0; i < p.relations.size(); ++i)
                for (const auto& t : p.relations[i]) {
                    Tuple img;
                    img.reserve(t.size());
                    bool inside = true;
                    for (int v : t) {
                        int iv = index_in(positions, v);
                        if (iv < 0) { inside = false; break; }
                        img.push_back(iv);
                    }
                    if (inside) rels[i].push_back(std::move(img));
                }
            return make_relational(m, p.arities, std::move(rels));
        }
    }
    throw input_error("induced: unknown kind");
}

std::vector<Rational> spectre(const OrderedStructure& s) {
    if (s.kind != Kind::OrderedMetric) throw input_error("spectre: structure is not a metric");
    std::vector<Rational> out(s.metric().d.begin(), s.metric().d.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

OrderedStructure as_digraph(const OrderedStructure& poset) {
    if (poset.kind != Kind::PosetLE) throw input_error("as_digraph: structure is not a poset");
    return {Kind::ReflexiveDigraphLE, poset.n, ReflexiveDigraphPayload{poset.poset().leq}};
}

std::optional<OrderedStructure> as_poset(const OrderedStructure& digraph) {
    if (digraph.kind != Kind::ReflexiveDigraphLE) throw input_error("as_poset: structure is not a reflexive digraph");
    OrderedStructure p{Kind::PosetLE, digraph.n, PosetPayload{digraph.digraph().rho}};
    if (!validate(p).ok()) return std::nullopt;
    return p;
}

} // namespace canram
