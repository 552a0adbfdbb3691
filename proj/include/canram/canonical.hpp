#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "canram/category.hpp"

namespace canram {

// select({x_0 < x_1 < ...}, Q) = the subchain {x_q : q in Q}.
// values must be strictly increasing, positions strictly increasing and in range.
std::vector<int> select(std::span<const int> values, std::span<const int> positions);

// A candidate answer to "how does the coloring behave along w": restriction to
// the positions P of the source determines color equality of composites.
struct CanonicalWitness {
    Embedding w;                // b -> c
    std::vector<int> positions; // subset of {0..|a|-1}, sorted
};

// True iff for all f,g in hom(a,b):
//   chi(compose(f,w)) == chi(compose(g,w))  <=>  f and g agree on every p in positions.
// chi.colors must align with hom_ac (sorted); throws input_error otherwise.
// The result only depends on color equality, never on the color ids.
bool is_canonical_witness(const Coloring& chi, const CanonicalWitness& wit,
                          const std::vector<Embedding>& hom_ab,
                          const std::vector<Embedding>& hom_ac);

// Precomputed tables for one (a, b, c) triple. Witness checks against a
// coloring then reduce to integer comparisons.
class WitnessSearch {
public:
    WitnessSearch(StructureRef a, StructureRef b, StructureRef c);

    const std::vector<Embedding>& hom_ab() const { return hom_ab_; }
    const std::vector<Embedding>& hom_bc() const { return hom_bc_; }
    const std::vector<Embedding>& hom_ac() const { return hom_ac_; }

    // First witness in scan order: w by hom-set index, then P by size, then
    // lexicographically by position list.
    std::optional<CanonicalWitness> find(std::span<const int> colors) const;

    bool check(std::span<const int> colors, int w_index, std::uint32_t p_mask) const;

private:
    StructureRef a_, b_, c_;
    std::vector<Embedding> hom_ab_, hom_bc_, hom_ac_;
    std::vector<std::vector<int>> comp_;        // comp_[w][f] = index of compose(f, w) in hom_ac
    std::vector<std::uint32_t> agree_;          // agree_[f*|hom_ab|+g] = positions where f,g agree
    std::vector<std::uint32_t> subset_order_;   // all P masks, by (size, position-list lex)
    std::vector<int> witness_positions(std::uint32_t mask) const;
};

std::optional<CanonicalWitness> find_canonical_witness(const Coloring& chi, const StructureRef& a,
                                                       const StructureRef& b, const StructureRef& c);

enum class CanOutcome { Holds, Fails, Inconclusive };

const char* outcome_name(CanOutcome o);

struct CanVerdict {
    CanOutcome outcome = CanOutcome::Inconclusive;
    bool holds() const { return outcome == CanOutcome::Holds; }
    // first coloring (in enumeration order) with no witness, when outcome == Fails
    std::optional<Coloring> counterexample;
    std::optional<std::uint64_t> counterexample_index;
    std::uint64_t colorings_examined = 0;
    std::uint64_t total_colorings = 0;
};

struct VerifyOptions {
    std::uint64_t max_colorings = 1'000'000;
    int workers = 1;
    // Called for every examined coloring, possibly from worker threads.
    // The witness argument is absent when the coloring has none.
    std::function<void(std::uint64_t index, const std::vector<int>& colors,
                       const std::optional<CanonicalWitness>& wit)>
        observer;
};

// Decides whether every coloring of hom(a,c) admits a canonical witness.
// Colorings are enumerated in restricted growth order and distributed over
// workers in index batches; the verdict, the counterexample and the stats are
// the same for every worker count. Requires hom(a,b) nonempty.
CanVerdict verify_can_arrow(const StructureRef& a, const StructureRef& b, const StructureRef& c,
                            const VerifyOptions& opts = {});

struct ErcStep {
    int n = 0;
    CanOutcome outcome = CanOutcome::Inconclusive;
    std::uint64_t colorings_examined = 0;
    std::uint64_t total_colorings = 0;
    std::optional<Coloring> counterexample;
};

struct ErcReport {
    int k = 0, m = 0, n_max = 0;
    std::optional<int> found_n;
    std::vector<ErcStep> steps;
};

// Minimal n <= n_max with verify_can_arrow(chain k, chain m, chain n) holding.
// Every n from m up to the answer is tested; nothing is assumed about
// monotonicity. Stops with outcome Inconclusive when a step hits the budget.
ErcReport erc_search(int k, int m, int n_max, const VerifyOptions& opts = {});

} // namespace canram
