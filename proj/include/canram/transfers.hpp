#pragma once

#include <span>
#include <string>
#include <vector>

#include "canram/structures.hpp"

namespace canram {

// --- ordered graphs vs reflexive digraphs vs tournaments ------------------
//
// Both correspondences are isomorphisms of categories that leave vertex maps
// untouched, so embedding sets transfer verbatim.

OrderedStructure graph_to_digraph(const OrderedStructure& g);
OrderedStructure digraph_to_graph(const OrderedStructure& d);
OrderedStructure graph_to_tournament(const OrderedStructure& g);
OrderedStructure tournament_to_graph(const OrderedStructure& t);

// --- total quasiorders and the tuple encoding ------------------------------

// A total quasiorder on tuple positions {0..r-1}, stored as the map sending a
// position to the rank of its equivalence class (ranks are exactly 0..s-1).
struct TotalQuasiorder {
    std::vector<int> class_of;

    int arity() const { return static_cast<int>(class_of.size()); }
    int class_count() const;
    bool leq(int i, int j) const { return class_of[i] <= class_of[j]; }
    std::vector<std::pair<int, int>> pairs() const; // all (i,j) with i <= j in the quasiorder
    std::string rgs_string() const;                 // digit string, e.g. "010"

    bool operator==(const TotalQuasiorder&) const = default;
    auto operator<=>(const TotalQuasiorder&) const = default;
};

inline constexpr int kDefaultArityCap = 4;

// Shape of a tuple: position i maps to the rank of a_i among the distinct
// values of the tuple. Throws input_error on empty tuples.
TotalQuasiorder tp(std::span<const int> tuple);

// Sorted distinct values of a tuple.
std::vector<int> mat(std::span<const int> tuple);

// The unique tuple with shape sigma and value set mu, i.e. tup[i] = mu[rank].
// Throws input_error when |mu| differs from the class count of sigma.
std::vector<int> tup(const TotalQuasiorder& sigma, std::span<const int> mu);

// All total quasiorders on {0..r-1}, ordered by the restricted growth string
// of the class partition, then by class_of within one partition.
// Counts grow fast (1, 3, 13, 75 for r = 1..4), hence the arity cap.
std::vector<TotalQuasiorder> enumerate_total_quasiorders(int r, int cap = kDefaultArityCap);

// Index set of the hypergraph encoding of a relational signature: one entry
// per (relation, quasiorder on its positions) pair, relations in order,
// quasiorders in enumeration order.
struct EncodingSignature {
    struct Item {
        int rel;
        TotalQuasiorder sigma;
        bool operator==(const Item&) const = default;
    };
    std::vector<Item> items;
    std::vector<int> base_arities;

    std::vector<int> arities() const; // class counts, one per item
    int index_of(int rel, const TotalQuasiorder& sigma) const;

    static EncodingSignature for_arities(std::vector<int> base, int cap = kDefaultArityCap);
};

// Relational structure -> hypergraph over the encoding signature: the edge set
// at (i, sigma) collects mat(t) for the tuples t of relation i with shape sigma.
OrderedStructure dagger(const OrderedStructure& rel, int cap = kDefaultArityCap);

// Hypergraph over the encoding signature -> relational structure; inverse of
// dagger. Throws input_error when arities do not match the encoding.
OrderedStructure star(const OrderedStructure& hyper, const EncodingSignature& enc);

// Every pair of distinct vertices appears together in some edge or tuple.
bool is_irreducible(const OrderedStructure& s);

// True iff no member of the family embeds into a.
bool forb_contains(const OrderedStructure& a, std::span<const OrderedStructure> family);

// --- signature surgery on hypergraphs --------------------------------------

// Keep the families at the given signature positions (strictly increasing).
OrderedStructure reduct(const OrderedStructure& hyper, std::span<const int> keep);

// Reindex families along g: position i of the result carries the family at
// g[i] of h0 and is declared with target_arities[i]. g must be surjective and
// the declared arity must match whenever the copied family is nonempty.
OrderedStructure polymer(const OrderedStructure& h0, std::span<const int> g,
                         std::span<const int> target_arities);

// Order sum: vertices concatenate block by block, families shift accordingly.
// All parts must share the signature.
OrderedStructure disjoint_union(std::span<const OrderedStructure> parts);

struct CompressionResult {
    std::vector<int> kept;                 // representative signature positions, ascending
    std::vector<int> g;                    // g[i] = representative with the same union family
    std::vector<OrderedStructure> reducts; // the kept-reduct of every input part
};

// Deduplicate signature positions whose families coincide in the disjoint
// union of the parts. Each part is the g-polymer of its reduct.
CompressionResult compress_signature(std::span<const OrderedStructure> parts);

} // namespace canram
