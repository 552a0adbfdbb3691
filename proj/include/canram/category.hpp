#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "canram/structures.hpp"

namespace canram {

using StructureRef = std::shared_ptr<const OrderedStructure>;

inline StructureRef share(OrderedStructure s) {
    return std::make_shared<const OrderedStructure>(std::move(s));
}

// A morphism: strictly increasing injective index map that both preserves and
// reflects the relations of its endpoints. Instances produced by
// enumerate_embeddings and compose satisfy this; is_embedding re-checks it.
struct Embedding {
    StructureRef source;
    StructureRef target;
    std::vector<int> map; // map[i] = image of vertex i

    bool same_map(const Embedding& other) const { return map == other.map; }
};

bool operator==(const Embedding& a, const Embedding& b);

// Full preservation/reflection check, independent of the enumerator.
bool is_embedding(const OrderedStructure& a, const OrderedStructure& b, std::span<const int> map);

// All embeddings of a into b, sorted lexicographically by map.
// Throws input_error when kinds or signatures (where applicable) differ.
std::vector<Embedding> enumerate_embeddings(const OrderedStructure& a, const OrderedStructure& b);
std::vector<Embedding> enumerate_embeddings(const StructureRef& a, const StructureRef& b);

// g after f; f: a -> b, g: b -> c. Throws input_error on endpoint mismatch.
Embedding compose(const Embedding& f, const Embedding& g);

Embedding identity(const StructureRef& a);

std::vector<int> compose_maps(std::span<const int> f, std::span<const int> g);

// Index of the embedding with the given map in a lexicographically sorted
// hom-set, or -1 when absent.
int hom_index(const std::vector<Embedding>& hom, std::span<const int> map);

// A coloring of a hom-set, stored as one color id per embedding (aligned with
// the sorted hom-set). Enumerated colorings are normalized: the first
// occurrences of the color ids appear in increasing order 0,1,2,...
struct Coloring {
    std::vector<int> colors;

    bool operator==(const Coloring&) const = default;
};

bool is_normalized(const Coloring& c);
Coloring normalize(const Coloring& c);

// Every set partition of a hom-set of the given size, in restricted growth
// order. Throws budget_exceeded when more than cap partitions exist.
std::vector<Coloring> enumerate_colorings(int homset_size, std::uint64_t cap);

} // namespace canram
