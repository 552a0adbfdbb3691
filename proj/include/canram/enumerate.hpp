#pragma once

#include <span>
#include <vector>

#include "canram/rational.hpp"
#include "canram/structures.hpp"

namespace canram {

// Exhaustive families of small structures, each in a fixed deterministic
// order so that sweep reports are reproducible. The order is always "edge
// mask ascending" over the pairs (x,y), x < y, listed lexicographically.

std::vector<Pair> up_pairs(int n);

// All 2^C(n,2) ordered graphs on n vertices.
std::vector<OrderedStructure> all_ordered_graphs(int n);

// All reflexive digraphs with arcs pointing up the order (loops always in).
std::vector<OrderedStructure> all_reflexive_digraphs(int n);

// All 2^C(n,2) tournaments: mask bit set = arc up, clear = arc down.
std::vector<OrderedStructure> all_tournaments(int n);

// All partial orders compatible with the vertex order (1, 1, 2, 7, 40, 357,
// 4824 of them for n = 0..6).
std::vector<OrderedStructure> all_posets(int n);

// All structures with a single binary relation: subsets of n^2 tuples in
// row-major mask order. 2^(n^2) structures, so keep n ≤ 3.
std::vector<OrderedStructure> all_one_binary_relational(int n);

// All metric spaces on n points whose distances are drawn from the given
// positive values, filtered by full validation. Assignment order: the
// off-diagonal slots in up-pair order, value index as the digit.
std::vector<OrderedStructure> all_metrics(int n, std::span<const Rational> positive_values);

} // namespace canram
