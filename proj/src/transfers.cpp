#include "canram/transfers.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "canram/category.hpp"
#include "canram/errors.hpp"
#include "canram/partitions.hpp"

namespace canram {

namespace {

void require_kind(const OrderedStructure& s, Kind k, const char* who) {
    if (s.kind != k)
        throw input_error(std::string(who) + ": expected " + kind_name(k) + ", got " +
                          kind_name(s.kind));
}

} // namespace

OrderedStructure graph_to_digraph(const OrderedStructure& g) {
    require_kind(g, Kind::OrderedGraph, "graph_to_digraph");
    std::vector<Pair> rho;
    for (int x = 0; x < g.n; ++x) rho.push_back({x, x});
    for (const auto& e : g.graph().edges) rho.push_back(e);
    return make_digraph(g.n, rho);
}

OrderedStructure digraph_to_graph(const OrderedStructure& d) {
    require_kind(d, Kind::ReflexiveDigraphLE, "digraph_to_graph");
    std::vector<Pair> edges;
    for (const auto& [x, y] : d.digraph().rho)
        if (x != y) edges.push_back({x, y});
    return make_graph(d.n, edges);
}

OrderedStructure graph_to_tournament(const OrderedStructure& g) {
    require_kind(g, Kind::OrderedGraph, "graph_to_tournament");
    const auto& edges = g.graph().edges;
    std::vector<Pair> arcs;
    for (int x = 0; x < g.n; ++x)
        for (int y = x + 1; y < g.n; ++y) {
            if (pair_present(edges, x, y))
                arcs.push_back({x, y});
            else
                arcs.push_back({y, x});
        }
    return make_tournament(g.n, arcs);
}

OrderedStructure tournament_to_graph(const OrderedStructure& t) {
    require_kind(t, Kind::Tournament, "tournament_to_graph");
    std::vector<Pair> edges;
    for (const auto& [x, y] : t.tournament().arcs)
        if (x < y) edges.push_back({x, y});
    return make_graph(t.n, edges);
}

int TotalQuasiorder::class_count() const {
    int m = 0;
    for (int c : class_of) m = std::max(m, c + 1);
    return m;
}

std::vector<std::pair<int, int>> TotalQuasiorder::pairs() const {
    std::vector<std::pair<int, int>> out;
    const int r = arity();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (class_of[i] <= class_of[j]) out.push_back({i, j});
    return out;
}

std::string TotalQuasiorder::rgs_string() const {
    std::string s;
    for (int c : class_of) s += static_cast<char>('0' + c);
    return s;
}

TotalQuasiorder tp(std::span<const int> tuple) {
    if (tuple.empty()) throw input_error("tp: empty tuple");
    std::vector<int> sorted = mat(tuple);
    TotalQuasiorder q;
    for (int a : tuple) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), a);
        q.class_of.push_back(static_cast<int>(it - sorted.begin()));
    }
    return q;
}

std::vector<int> mat(std::span<const int> tuple) {
    if (tuple.empty()) throw input_error("mat: empty tuple");
    std::vector<int> out(tuple.begin(), tuple.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> tup(const TotalQuasiorder& sigma, std::span<const int> mu) {
    if (sigma.class_count() != static_cast<int>(mu.size()))
        throw input_error("tup: class count of the quasiorder differs from the value set size");
    std::vector<int> out;
    out.reserve(sigma.class_of.size());
    for (int c : sigma.class_of) out.push_back(mu[c]);
    return out;
}

std::vector<TotalQuasiorder> enumerate_total_quasiorders(int r, int cap) {
    if (r < 1) throw input_error("enumerate_total_quasiorders: arity must be positive");
    if (r > cap)
        throw budget_exceeded("enumerate_total_quasiorders: arity " + std::to_string(r) +
                                  " above cap " + std::to_string(cap),
                              static_cast<std::uint64_t>(r));
    // Sorted by (partition of the positions as a restricted-growth string, then
    // placement of the classes in the linear order).
    std::vector<TotalQuasiorder> out;
    std::vector<int> rgs = rgs_first(r);
    do {
        const int s = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<int> perm(s);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            TotalQuasiorder q;
            q.class_of.resize(r);
            for (int i = 0; i < r; ++i) q.class_of[i] = perm[rgs[i]];
            out.push_back(std::move(q));
        } while (std::next_permutation(perm.begin(), perm.end()));
    } while (rgs_next(rgs));
    return out;
}

std::vector<int> EncodingSignature::arities() const {
    std::vector<int> out;
    out.reserve(items.size());
    for (const auto& item : items) out.push_back(item.sigma.class_count());
    return out;
}

int EncodingSignature::index_of(int rel, const TotalQuasiorder& sigma) const {
    for (std::size_t k = 0; k < items.size(); ++k)
        if (items[k].rel == rel && items[k].sigma == sigma) return static_cast<int>(k);
    throw input_error("EncodingSignature: no item for relation " + std::to_string(rel) +
                      " and quasiorder " + sigma.rgs_string());
}

EncodingSignature EncodingSignature::for_arities(std::vector<int> base, int cap) {
    EncodingSignature enc;
    enc.base_arities = std::move(base);
    for (std::size_t i = 0; i < enc.base_arities.size(); ++i)
        for (auto& q : enumerate_total_quasiorders(enc.base_arities[i], cap))
            enc.items.push_back({static_cast<int>(i), std::move(q)});
    return enc;
}

OrderedStructure dagger(const OrderedStructure& rel, int cap) {
    require_kind(rel, Kind::Relational, "dagger");
    const auto& p = rel.relational();
    auto enc = EncodingSignature::for_arities(p.arities, cap);
    std::vector<EdgeFamily> families(enc.items.size());
    for (std::size_t i = 0; i < p.relations.size(); ++i)
        for (const auto& t : p.relations[i]) {
            const int k = enc.index_of(static_cast<int>(i), tp(t));
            families[k].push_back(mat(t));
        }
    return make_hypergraph(rel.n, enc.arities(), families);
}

OrderedStructure star(const OrderedStructure& hyper, const EncodingSignature& enc) {
    require_kind(hyper, Kind::Hypergraph, "star");
    const auto& p = hyper.hypergraph();
    if (p.arities != enc.arities())
        throw input_error("star: hypergraph arities do not match the encoding signature");
    std::vector<TupleFamily> relations(enc.base_arities.size());
    for (std::size_t k = 0; k < enc.items.size(); ++k) {
        const auto& item = enc.items[k];
        for (const auto& e : p.families[k])
            relations[item.rel].push_back(tup(item.sigma, e));
    }
    return make_relational(hyper.n, enc.base_arities, relations);
}

bool is_irreducible(const OrderedStructure& s) {
    if (s.kind != Kind::Relational && s.kind != Kind::Hypergraph)
        throw input_error("is_irreducible: expects a relational structure or a hypergraph");
    if (s.n <= 1) return true;
    std::set<Pair> covered;
    auto cover = [&](std::span<const int> pts) {
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (pts[i] < pts[j]) covered.insert({pts[i], pts[j]});
    };
    if (s.kind == Kind::Hypergraph) {
        for (const auto& fam : s.hypergraph().families)
            for (const auto& e : fam) cover(e);
    } else {
        for (const auto& rel : s.relational().relations)
            for (const auto& t : rel) cover(t);
    }
    return covered.size() == static_cast<std::size_t>(s.n) * (s.n - 1) / 2;
}

bool forb_contains(const OrderedStructure& a, std::span<const OrderedStructure> family) {
    for (const auto& f : family)
        if (!enumerate_embeddings(f, a).empty()) return false;
    return true;
}

OrderedStructure reduct(const OrderedStructure& hyper, std::span<const int> keep) {
    require_kind(hyper, Kind::Hypergraph, "reduct");
    const auto& p = hyper.hypergraph();
    const int total = static_cast<int>(p.arities.size());
    std::vector<int> arities;
    std::vector<EdgeFamily> families;
    int prev = -1;
    for (int k : keep) {
        if (k < 0 || k >= total)
            throw input_error("reduct: signature index " + std::to_string(k) + " out of range");
        if (k <= prev) throw input_error("reduct: kept indices must be strictly increasing");
        prev = k;
        arities.push_back(p.arities[k]);
        families.push_back(p.families[k]);
    }
    return make_hypergraph(hyper.n, arities, families);
}

OrderedStructure polymer(const OrderedStructure& h0, std::span<const int> g,
                         std::span<const int> target_arities) {
    require_kind(h0, Kind::Hypergraph, "polymer");
    const auto& p = h0.hypergraph();
    const int source = static_cast<int>(p.arities.size());
    if (g.size() != target_arities.size())
        throw input_error("polymer: index map and arity list sizes differ");
    std::vector<bool> hit(source, false);
    std::vector<int> arities;
    std::vector<EdgeFamily> families;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const int j = g[i];
        if (j < 0 || j >= source)
            throw input_error("polymer: index " + std::to_string(j) + " out of range");
        hit[j] = true;
        if (!p.families[j].empty() && target_arities[i] != p.arities[j])
            throw input_error("polymer: arity " + std::to_string(target_arities[i]) +
                              " at position " + std::to_string(i) +
                              " clashes with a nonempty family of arity " +
                              std::to_string(p.arities[j]));
        arities.push_back(target_arities[i]);
        families.push_back(p.families[j]);
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
        throw input_error("polymer: index map is not surjective");
    return make_hypergraph(h0.n, arities, families);
}

OrderedStructure disjoint_union(std::span<const OrderedStructure> parts) {
    if (parts.empty()) throw input_error("disjoint_union: needs at least one part");
    require_kind(parts[0], Kind::Hypergraph, "disjoint_union");
    const auto& arities = parts[0].hypergraph().arities;
    for (const auto& part : parts) {
        require_kind(part, Kind::Hypergraph, "disjoint_union");
        if (part.hypergraph().arities != arities)
            throw input_error("disjoint_union: signature mismatch between parts");
    }
    int n = 0;
    std::vector<EdgeFamily> families(arities.size());
    for (const auto& part : parts) {
        const auto& p = part.hypergraph();
        for (std::size_t k = 0; k < families.size(); ++k)
            for (auto e : p.families[k]) {
                for (int& v : e) v += n;
                families[k].push_back(std::move(e));
            }
        n += part.n;
    }
    return make_hypergraph(n, arities, families);
}

CompressionResult compress_signature(std::span<const OrderedStructure> parts) {
    const OrderedStructure whole = disjoint_union(parts);
    const auto& p = whole.hypergraph();
    const int total = static_cast<int>(p.arities.size());

    CompressionResult out;
    out.g.resize(total);
    std::map<EdgeFamily, int> representative;
    for (int k = 0; k < total; ++k) {
        auto [it, fresh] = representative.try_emplace(p.families[k], k);
        if (fresh) out.kept.push_back(k);
        out.g[k] = it->second;
    }
    for (const auto& part : parts) out.reducts.push_back(reduct(part, out.kept));
    return out;
}

} // namespace canram
