#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "canram/canonical.hpp"
#include "canram/category.hpp"
#include "canram/rational.hpp"
#include "canram/structures.hpp"

namespace canram {

// A distance scale 0 = t_0 < t_1 < ... < t_l with t_{i+j} <= t_i + t_j.
struct TightSet {
    std::vector<Rational> values;

    int levels() const { return static_cast<int>(values.size()) - 1; } // the k
    bool operator==(const TightSet&) const = default;
};

// True iff the subadditivity inequality holds everywhere. The input must be
// sorted, distinct, and start at 0 (input_error otherwise).
bool is_tight(std::span<const Rational> values);

// Validates sortedness, distinctness, leading zero, and tightness.
TightSet make_tight_set(std::vector<Rational> values);

struct TightSearchOptions {
    std::uint64_t max_candidates = 64;     // additive-closure pool size guard
    std::uint64_t max_subsets = 1u << 20;  // supersets examined before giving up
};

// Smallest-cardinality-first search for a tight superset of s drawn from the
// additive closure of s truncated at max(s). The result keeps min-nonzero and
// max. Returns nullopt when the whole candidate space is exhausted; throws
// budget_exceeded when a cap is hit first.
std::optional<TightSet> tight_extension(std::span<const Rational> s,
                                        const TightSearchOptions& opts = {});

// Level poset of a metric space: points (x,i) for x in M and level i in
// 0..k, indexed as i*|M| + x; (x,i) is below (y,j) iff i <= j and
// d(x,y) <= s_j - s_i. Requires spectre(m) contained in the scale.
OrderedStructure f_obj(const OrderedStructure& m, const TightSet& s);

inline constexpr std::uint64_t kGObjDefaultCap = 4096;

// Tuple metric space of a poset: points are the k-tuples over p in
// lexicographic order; d(a,b) = s_j with j the least shift making all pairs
// comparable both ways, else s_k. Throws budget_exceeded when |p|^k > cap.
OrderedStructure g_obj(const OrderedStructure& p, const TightSet& s,
                       std::uint64_t cap = kGObjDefaultCap);

// Embedding transfer: u from the level poset of m into a poset p becomes the
// map x -> (u(x,0), ..., u(x,k-1)) from m into the tuple space of p. The
// cached tuple space can be supplied to avoid rebuilding g_obj(p).
// Throws internal_inconsistency when the result fails the embedding check
// (happens only for scales with s_i + s_j strictly above s_{i+j} somewhere).
Embedding phi(const Embedding& u, const OrderedStructure& m, const TightSet& s,
              StructureRef g_target = nullptr);

// Morphism action of the level-poset construction: (x,i) -> (f(x), i).
Embedding f_mor(const Embedding& f, const TightSet& s);

// The pre-adjunction equation phi(u) . f = phi(u . F(f)) on one instance.
bool cpa1_check(const Embedding& u, const Embedding& f, const TightSet& s,
                StructureRef g_target = nullptr);

// First coordinates {x : (x,i) in p_positions} of level-poset positions.
std::vector<int> cpa2_project(std::span<const int> p_positions, int m_size);

// Pull a coloring of hom(e, g_obj(c)) back to hom(f_obj(e), c) along phi.
Coloring cpa_chi_prime(const Coloring& chi, const OrderedStructure& e,
                       const OrderedStructure& c, const TightSet& s);

// Transfer a canonical witness (u, P) for the pulled-back coloring into the
// metric side: (phi(u), projected P). Checks the canonical-witness
// postcondition and throws internal_inconsistency when it fails.
CanonicalWitness cpa_transfer_witness(const Coloring& chi, const CanonicalWitness& wit_c,
                                      const OrderedStructure& e, const OrderedStructure& d_space,
                                      const TightSet& s);

// --- exhaustive desk-scale sweep -------------------------------------------

struct CpaSweepOptions {
    int max_points = 2; // metric spaces on 0..max_points points
    std::vector<TightSet> scales;
    int workers = 1;
};

struct CpaSweepReport {
    std::uint64_t fobj_checked = 0, fobj_valid = 0;
    std::uint64_t gobj_checked = 0, gobj_valid = 0;
    std::uint64_t phi_checked = 0, phi_valid = 0;
    std::uint64_t cpa1_checked = 0, cpa1_ok = 0;
    std::uint64_t cpa2_checked = 0, cpa2_ok = 0;
    bool ok = true;
    std::string first_failure;

    bool operator==(const CpaSweepReport&) const = default;
};

// Checks, for every scale: f_obj validity on all metric spaces drawn from the
// scale, g_obj validity on all posets up to the largest level-poset size,
// phi's embedding postcondition, the CPA1 equation on all composable (u, f),
// and the CPA2 biconditional on all (f, g, P). Deterministic at any worker
// count.
CpaSweepReport run_cpa_sweep(const CpaSweepOptions& opts);

} // namespace canram
