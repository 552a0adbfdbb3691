#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "canram/rational.hpp"

namespace canram {

// Every structure lives on the vertex set {0, ..., n-1}; the linear order is
// always the index order. Relation data is stored sorted and deduplicated so
// structural equality is plain field equality.

enum class Kind {
    Chain,
    OrderedGraph,
    Hypergraph,
    ReflexiveDigraphLE,
    Tournament,
    PosetLE,
    OrderedMetric,
    Relational,
};

const char* kind_name(Kind k);
std::optional<Kind> kind_from_name(const std::string& name);

using Pair = std::pair<int, int>;
using Edge = std::vector<int>;          // sorted vertex set
using Tuple = std::vector<int>;         // ordered, repetition allowed
using EdgeFamily = std::vector<Edge>;   // sorted set of edges
using TupleFamily = std::vector<Tuple>; // sorted set of tuples

struct ChainPayload {
    bool operator==(const ChainPayload&) const = default;
};

struct OrderedGraphPayload {
    std::vector<Pair> edges; // each stored with smaller index first
    bool operator==(const OrderedGraphPayload&) const = default;
};

struct HypergraphPayload {
    std::vector<int> arities;        // one entry per index of the signature
    std::vector<EdgeFamily> families; // families[i] holds arities[i]-subsets
    bool operator==(const HypergraphPayload&) const = default;
};

struct ReflexiveDigraphPayload {
    std::vector<Pair> rho; // reflexive; non-loop arcs point up the order
    bool operator==(const ReflexiveDigraphPayload&) const = default;
};

struct TournamentPayload {
    std::vector<Pair> arcs; // exactly one arc per unordered pair
    bool operator==(const TournamentPayload&) const = default;
};

struct PosetPayload {
    std::vector<Pair> leq; // reflexive, antisymmetric, transitive, order-compatible
    bool operator==(const PosetPayload&) const = default;
};

struct MetricPayload {
    std::vector<Rational> d; // n*n row-major symmetric matrix
    bool operator==(const MetricPayload&) const = default;
};

struct RelationalPayload {
    std::vector<int> arities;
    std::vector<TupleFamily> relations;
    bool operator==(const RelationalPayload&) const = default;
};

struct OrderedStructure {
    Kind kind = Kind::Chain;
    int n = 0;
    std::variant<ChainPayload, OrderedGraphPayload, HypergraphPayload,
                 ReflexiveDigraphPayload, TournamentPayload, PosetPayload,
                 MetricPayload, RelationalPayload>
        payload;

    bool operator==(const OrderedStructure&) const = default;

    const OrderedGraphPayload& graph() const { return std::get<OrderedGraphPayload>(payload); }
    const HypergraphPayload& hypergraph() const { return std::get<HypergraphPayload>(payload); }
    const ReflexiveDigraphPayload& digraph() const { return std::get<ReflexiveDigraphPayload>(payload); }
    const TournamentPayload& tournament() const { return std::get<TournamentPayload>(payload); }
    const PosetPayload& poset() const { return std::get<PosetPayload>(payload); }
    const MetricPayload& metric() const { return std::get<MetricPayload>(payload); }
    const RelationalPayload& relational() const { return std::get<RelationalPayload>(payload); }
};

// Factories normalize their input (sort, dedup, orient unordered pairs).
OrderedStructure make_chain(int n);
OrderedStructure make_graph(int n, std::vector<Pair> edges);
OrderedStructure make_hypergraph(int n, std::vector<int> arities, std::vector<EdgeFamily> families);
OrderedStructure make_digraph(int n, std::vector<Pair> rho);
OrderedStructure make_digraph_up(int n, std::vector<Pair> arcs); // adds the loops
OrderedStructure make_tournament(int n, std::vector<Pair> arcs);
OrderedStructure make_poset(int n, std::vector<Pair> leq);
OrderedStructure make_poset_strict(int n, std::vector<Pair> below); // adds the loops
OrderedStructure make_metric(int n, std::vector<Rational> d);
OrderedStructure make_relational(int n, std::vector<int> arities, std::vector<TupleFamily> relations);

struct Violation {
    std::string axiom;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const OrderedStructure& s);

// Substructure induced by a strictly increasing list of positions.
// Throws input_error when positions are out of range or not increasing.
OrderedStructure induced(const OrderedStructure& s, std::span<const int> positions);

// Sorted set of distances attained by a metric structure (0 included when n >= 1).
std::vector<Rational> spectre(const OrderedStructure& metric);

// Posets are reflexive digraphs whose relation happens to be transitive.
// These bridge the two kinds without touching the relation data.
OrderedStructure as_digraph(const OrderedStructure& poset);
std::optional<OrderedStructure> as_poset(const OrderedStructure& digraph);

bool pair_present(const std::vector<Pair>& sorted, int a, int b);

} // namespace canram
