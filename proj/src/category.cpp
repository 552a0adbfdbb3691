#include "canram/category.hpp"

#include <algorithm>

#include "canram/errors.hpp"
#include "canram/partitions.hpp"

namespace canram {

bool operator==(const Embedding& a, const Embedding& b) {
    if (a.map != b.map) return false;
    auto same = [](const StructureRef& x, const StructureRef& y) {
        return x == y || (x && y && *x == *y);
    };
    return same(a.source, b.source) && same(a.target, b.target);
}

namespace {

bool signatures_match(const OrderedStructure& a, const OrderedStructure& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::Hypergraph) return a.hypergraph().arities == b.hypergraph().arities;
    if (a.kind == Kind::Relational) return a.relational().arities == b.relational().arities;
    return true;
}

bool increasing_injective(std::span<const int> map, int n_target) {
    int prev = -1;
    for (int v : map) {
        if (v <= prev || v < 0 || v >= n_target) return false;
        prev = v;
    }
    return true;
}

// dense lookup for the pair-based kinds
std::vector<char> pair_matrix(const std::vector<Pair>& ps, int n) {
    std::vector<char> m(static_cast<size_t>(n) * n, 0);
    for (auto [a, b] : ps)
        if (a >= 0 && a < n && b >= 0 && b < n) m[a * n + b] = 1;
    return m;
}

const std::vector<Pair>* pair_data(const OrderedStructure& s) {
    switch (s.kind) {
        case Kind::OrderedGraph: return &s.graph().edges;
        case Kind::ReflexiveDigraphLE: return &s.digraph().rho;
        case Kind::Tournament: return &s.tournament().arcs;
        case Kind::PosetLE: return &s.poset().leq;
        default: return nullptr;
    }
}

// next r-subset of {0..n-1} in lexicographic order
bool next_subset(std::vector<int>& s, int n) {
    const int r = static_cast<int>(s.size());
    for (int i = r - 1; i >= 0; --i) {
        if (s[i] < n - (r - i)) {
            ++s[i];
            for (int j = i + 1; j < r; ++j) s[j] = s[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool check_families(const OrderedStructure& a, const OrderedStructure& b, std::span<const int> map) {
    const bool hyper = a.kind == Kind::Hypergraph;
    const auto& arities = hyper ? a.hypergraph().arities : a.relational().arities;
    for (size_t i = 0; i < arities.size(); ++i) {
        const int r = arities[i];
        if (hyper) {
            if (r > a.n) {
                // no r-subsets on the source side; reflection still needs the
                // target family to avoid the image, which is impossible here
                continue;
            }
            const auto& fa = a.hypergraph().families[i];
            const auto& fb = b.hypergraph().families[i];
            std::vector<int> s(r);
            for (int j = 0; j < r; ++j) s[j] = j;
            do {
                Edge img(r);
                for (int j = 0; j < r; ++j) img[j] = map[s[j]];
                bool in_a = std::binary_search(fa.begin(), fa.end(), s);
                bool in_b = std::binary_search(fb.begin(), fb.end(), img);
                if (in_a != in_b) return false;
            } while (next_subset(s, a.n));
        } else {
            const auto& ra = a.relational().relations[i];
            const auto& rb = b.relational().relations[i];
            // walk every r-tuple over the source vertices
            if (a.n == 0) {
                if (!ra.empty()) return false;
                continue;
            }
            Tuple t(r, 0);
            while (true) {
                Tuple img(r);
                for (int j = 0; j < r; ++j) img[j] = map[t[j]];
                bool in_a = std::binary_search(ra.begin(), ra.end(), t);
                bool in_b = std::binary_search(rb.begin(), rb.end(), img);
                if (in_a != in_b) return false;
                int p = r - 1;
                while (p >= 0 && t[p] == a.n - 1) t[p--] = 0;
                if (p < 0) break;
                ++t[p];
            }
        }
    }
    return true;
}

} // namespace

bool is_embedding(const OrderedStructure& a, const OrderedStructure& b, std::span<const int> map) {
    if (!signatures_match(a, b)) return false;
    if (static_cast<int>(map.size()) != a.n) return false;
    if (!increasing_injective(map, b.n)) return false;
    switch (a.kind) {
        case Kind::Chain:
            return true;
        case Kind::OrderedGraph: {
            const auto& ea = a.graph().edges;
            const auto& eb = b.graph().edges;
            for (int x = 0; x < a.n; ++x)
                for (int y = x + 1; y < a.n; ++y)
                    if (pair_present(ea, x, y) != pair_present(eb, map[x], map[y])) return false;
            return true;
        }
        case Kind::ReflexiveDigraphLE:
        case Kind::Tournament:
        case Kind::PosetLE: {
            const auto& pa = *pair_data(a);
            const auto& pb = *pair_data(b);
            for (int x = 0; x < a.n; ++x)
                for (int y = 0; y < a.n; ++y)
                    if (pair_present(pa, x, y) != pair_present(pb, map[x], map[y])) return false;
            return true;
        }
        case Kind::OrderedMetric: {
            const auto& da = a.metric().d;
            const auto& db = b.metric().d;
            for (int x = 0; x < a.n; ++x)
                for (int y = 0; y < a.n; ++y)
                    if (da[x * a.n + y] != db[map[x] * b.n + map[y]]) return false;
            return true;
        }
        case Kind::Hypergraph:
        case Kind::Relational:
            return check_families(a, b, map);
    }
    return false;
}

namespace {

// Backtracking enumerator. Candidates are tried in increasing order, so the
// output is lexicographically sorted by construction. Pairwise kinds prune at
// every step; the family kinds only get the cheap monotonicity pruning and a
// full check at the leaves (fine at the intended scales).
struct Enumerator {
    const OrderedStructure& a;
    const OrderedStructure& b;
    std::vector<char> ma, mb; // pair matrices when applicable
    bool pairwise = false;
    bool metric = false;
    std::vector<Embedding> out;
    std::vector<int> map;
    StructureRef sa, sb;

    Enumerator(const OrderedStructure& a_, const OrderedStructure& b_) : a(a_), b(b_) {
        if (const auto* pd = pair_data(a); pd) {
            pairwise = true;
            ma = pair_matrix(*pd, a.n);
            mb = pair_matrix(*pair_data(b), b.n);
        }
        metric = a.kind == Kind::OrderedMetric;
    }

    bool compatible(int i, int c) const {
        if (pairwise) {
            for (int j = 0; j < i; ++j) {
                if (ma[j * a.n + i] != mb[map[j] * b.n + c]) return false;
                if (ma[i * a.n + j] != mb[c * b.n + map[j]]) return false;
            }
            if (ma[i * a.n + i] != mb[c * b.n + c]) return false;
            return true;
        }
        if (metric) {
            const auto& da = a.metric().d;
            const auto& db = b.metric().d;
            for (int j = 0; j < i; ++j)
                if (da[j * a.n + i] != db[map[j] * b.n + c]) return false;
            return true;
        }
        return true;
    }

    void run(int i, int last) {
        if (i == a.n) {
            if (pairwise || metric || a.kind == Kind::Chain || check_families(a, b, map))
                out.push_back({sa, sb, map});
            return;
        }
        for (int c = last + 1; c <= b.n - (a.n - i); ++c) {
            if (!compatible(i, c)) continue;
            map[i] = c;
            run(i + 1, c);
        }
    }
};

} // namespace

std::vector<Embedding> enumerate_embeddings(const OrderedStructure& a, const OrderedStructure& b) {
    return enumerate_embeddings(share(a), share(b));
}

std::vector<Embedding> enumerate_embeddings(const StructureRef& a, const StructureRef& b) {
    if (!signatures_match(*a, *b))
        throw input_error(std::string("enumerate_embeddings: kind/signature mismatch (") +
                          kind_name(a->kind) + " vs " + kind_name(b->kind) + ")");
    Enumerator e(*a, *b);
    e.sa = a;
    e.sb = b;
    e.map.resize(a->n);
    if (a->n <= b->n) e.run(0, -1);
    return std::move(e.out);
}

Embedding compose(const Embedding& f, const Embedding& g) {
    if (!(f.target == g.source || (f.target && g.source && *f.target == *g.source)))
        throw input_error("compose: inner endpoints differ");
    return {f.source, g.target, compose_maps(f.map, g.map)};
}

Embedding identity(const StructureRef& a) {
    std::vector<int> m(a->n);
    for (int i = 0; i < a->n; ++i) m[i] = i;
    return {a, a, std::move(m)};
}

std::vector<int> compose_maps(std::span<const int> f, std::span<const int> g) {
    std::vector<int> out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
    return out;
}

int hom_index(const std::vector<Embedding>& hom, std::span<const int> map) {
    auto it = std::lower_bound(hom.begin(), hom.end(), map, [](const Embedding& e, std::span<const int> m) {
        return std::lexicographical_compare(e.map.begin(), e.map.end(), m.begin(), m.end());
    });
    if (it == hom.end() || !std::equal(it->map.begin(), it->map.end(), map.begin(), map.end())) return -1;
    return static_cast<int>(it - hom.begin());
}

bool is_normalized(const Coloring& c) { return is_restricted_growth(c.colors); }

Coloring normalize(const Coloring& c) {
    std::vector<int> rename;
    Coloring out;
    out.colors.reserve(c.colors.size());
    for (int v : c.colors) {
        auto it = std::find(rename.begin(), rename.end(), v);
        if (it == rename.end()) {
            rename.push_back(v);
            out.colors.push_back(static_cast<int>(rename.size()) - 1);
        } else {
            out.colors.push_back(static_cast<int>(it - rename.begin()));
        }
    }
    return out;
}

std::vector<Coloring> enumerate_colorings(int homset_size, std::uint64_t cap) {
    std::uint64_t total = bell_number(homset_size);
    if (total > cap)
        throw budget_exceeded("enumerate_colorings: " + std::to_string(total) +
                                  " partitions exceed the cap of " + std::to_string(cap),
                              cap);
    std::vector<Coloring> out;
    out.reserve(total);
    for_each_partition(homset_size, total, [&](const std::vector<int>& a) { out.push_back(Coloring{a}); });
    return out;
}

} // namespace canram
