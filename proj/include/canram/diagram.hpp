#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "canram/canonical.hpp"
#include "canram/category.hpp"
#include "canram/structures.hpp"

namespace canram {

// A two-row diagram: one top object per copy of b, one bottom node per
// coincidence of two legs. Leg indices are 0-based internally.
struct BottomNode {
    Embedding u; // a -> b, composed with leg i
    Embedding v; // a -> b, composed with leg j
    int i = 0;
    int j = 0;
};

struct BinaryDiagram {
    StructureRef a;
    StructureRef b;
    int top_count = 0;
    std::vector<BottomNode> bottom;
};

struct Cocone {
    StructureRef tip;
    std::vector<Embedding> legs; // one per top object, b -> tip
};

// Legs are hom(b, c) in canonical order; bottom nodes are exactly the
// quadruples (u, v, i, j), i != j, with legs[i]*u = legs[j]*v, listed by
// (i, j, u, v) in enumeration order. The returned cocone commutes by
// construction. An empty hom(b, c) yields an empty diagram.
std::pair<BinaryDiagram, Cocone> build_binary_diagram(const StructureRef& a,
                                                      const StructureRef& b,
                                                      const StructureRef& c, int workers = 1);

// True iff legs[i]*u = legs[j]*v for every bottom node.
// Throws input_error when the leg count differs from top_count.
bool check_cocone(const BinaryDiagram& d, const Cocone& c);

// Restrict an up-directed reflexive digraph tip to the union of the leg
// images, transitively close the relation there, and return the result as a
// poset tip with the same legs. Vertices are relabeled increasingly. Throws
// input_error when the closure violates antisymmetry.
Cocone pos_closure_cocone(const BinaryDiagram& d, const Cocone& edig_cocone);

// Push a coloring of hom(a, pos.tip) through the legs: the embedding
// e_s * u gets color chi(f_s * u) + 1, everything unreached gets 0. Throws
// input_error when two assignments clash (the cocone does not commute) or
// when some composite f_s * u is missing from hom(a, pos.tip).
Coloring transfer_coloring(const Coloring& chi, const StructureRef& a, const Cocone& pos,
                           const Cocone& edig);

// Replace the witness leg: (e_l, P) for the transferred coloring becomes
// (f_l, P) for the original one. Checks the canonical-witness postcondition
// and throws internal_inconsistency when it fails.
CanonicalWitness transfer_witness(const Coloring& chi, const CanonicalWitness& wit_prime,
                                  const StructureRef& a, const Cocone& pos, const Cocone& edig);

// --- exhaustive desk-scale sweep -------------------------------------------

struct TransferSweepOptions {
    int a_max = 2; // poset sizes for the pattern
    int b_max = 3; // poset sizes for the middle object
    int c_max = 4; // digraph sizes for the tip
    int workers = 1;
    std::uint64_t max_colorings = 1u << 20; // per instance
};

struct TransferSweepReport {
    std::uint64_t instances = 0;
    std::uint64_t tips_valid = 0;
    std::uint64_t cocones_commuting = 0;
    std::uint64_t legs_checked = 0, legs_valid = 0;
    std::uint64_t colorings = 0;
    std::uint64_t transfers_disjoint = 0;
    std::uint64_t witnesses_found = 0, witnesses_valid = 0;
    bool closure_ok = true;  // every tip a valid commuting poset cocone with valid legs
    bool transfer_ok = true; // every transferred coloring well-formed (disjoint classes)
    bool witness_ok = true;  // every transferred witness passes the canonical check
    std::string first_closure_failure;
    std::string first_transfer_failure;
    std::string first_witness_failure;

    bool operator==(const TransferSweepReport&) const = default;
};

// For every poset pair (A, B) with hom(A, B) nonempty and every up-directed
// reflexive digraph tip C in range: build the diagram over hom(B, C), close
// the tip into a poset, and push every coloring of hom(A, D) through the
// legs; whenever the transferred coloring admits a witness, pull it back and
// check it. Deterministic at any worker count.
TransferSweepReport run_transfer_sweep(const TransferSweepOptions& opts);

} // namespace canram
