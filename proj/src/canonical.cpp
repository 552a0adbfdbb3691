#include "canram/canonical.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>

#include "canram/errors.hpp"
#include "canram/parallel.hpp"
#include "canram/partitions.hpp"

namespace canram {

std::vector<int> select(std::span<const int> values, std::span<const int> positions) {
    for (size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1]) throw input_error("select: values must be strictly increasing");
    std::vector<int> out;
    out.reserve(positions.size());
    int prev = -1;
    for (int q : positions) {
        if (q < 0 || q >= static_cast<int>(values.size()))
            throw input_error("select: position " + std::to_string(q) + " out of range");
        if (q <= prev) throw input_error("select: positions must be strictly increasing");
        prev = q;
        out.push_back(values[q]);
    }
    return out;
}

bool is_canonical_witness(const Coloring& chi, const CanonicalWitness& wit,
                          const std::vector<Embedding>& hom_ab,
                          const std::vector<Embedding>& hom_ac) {
    if (chi.colors.size() != hom_ac.size())
        throw input_error("is_canonical_witness: coloring does not align with hom(a,c)");
    std::vector<int> color_along;
    color_along.reserve(hom_ab.size());
    for (const auto& f : hom_ab) {
        auto m = compose_maps(f.map, wit.w.map);
        int idx = hom_index(hom_ac, m);
        if (idx < 0) throw input_error("is_canonical_witness: composite not in hom(a,c)");
        color_along.push_back(chi.colors[idx]);
    }
    for (size_t f = 0; f < hom_ab.size(); ++f)
        for (size_t g = f + 1; g < hom_ab.size(); ++g) {
            bool same_color = color_along[f] == color_along[g];
            bool agree = true;
            for (int p : wit.positions)
                if (hom_ab[f].map[p] != hom_ab[g].map[p]) { agree = false; break; }
            if (same_color != agree) return false;
        }
    return true;
}

WitnessSearch::WitnessSearch(StructureRef a, StructureRef b, StructureRef c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (a_->n > 31) throw input_error("witness search supports sources up to 31 vertices");
    hom_ab_ = enumerate_embeddings(a_, b_);
    hom_bc_ = enumerate_embeddings(b_, c_);
    hom_ac_ = enumerate_embeddings(a_, c_);

    comp_.resize(hom_bc_.size());
    for (size_t w = 0; w < hom_bc_.size(); ++w) {
        comp_[w].resize(hom_ab_.size());
        for (size_t f = 0; f < hom_ab_.size(); ++f) {
            auto m = compose_maps(hom_ab_[f].map, hom_bc_[w].map);
            int idx = hom_index(hom_ac_, m);
            if (idx < 0) throw internal_inconsistency("composite embedding missing from hom(a,c)");
            comp_[w][f] = idx;
        }
    }

    const size_t nf = hom_ab_.size();
    agree_.assign(nf * nf, 0);
    for (size_t f = 0; f < nf; ++f)
        for (size_t g = 0; g < nf; ++g) {
            std::uint32_t mask = 0;
            for (int p = 0; p < a_->n; ++p)
                if (hom_ab_[f].map[p] == hom_ab_[g].map[p]) mask |= (1u << p);
            agree_[f * nf + g] = mask;
        }

    for (std::uint32_t m = 0; m < (1u << a_->n); ++m) subset_order_.push_back(m);
    auto as_list = [n = a_->n](std::uint32_t m) {
        std::vector<int> v;
        for (int p = 0; p < n; ++p)
            if (m & (1u << p)) v.push_back(p);
        return v;
    };
    std::sort(subset_order_.begin(), subset_order_.end(), [&](std::uint32_t x, std::uint32_t y) {
        int px = std::popcount(x), py = std::popcount(y);
        if (px != py) return px < py;
        return as_list(x) < as_list(y);
    });
}

bool WitnessSearch::check(std::span<const int> colors, int w_index, std::uint32_t p_mask) const {
    const size_t nf = hom_ab_.size();
    const auto& comp = comp_[w_index];
    for (size_t f = 0; f < nf; ++f)
        for (size_t g = f + 1; g < nf; ++g) {
            bool same_color = colors[comp[f]] == colors[comp[g]];
            bool agree = (p_mask & ~agree_[f * nf + g]) == 0;
            if (same_color != agree) return false;
        }
    return true;
}

std::vector<int> WitnessSearch::witness_positions(std::uint32_t mask) const {
    std::vector<int> v;
    for (int p = 0; p < a_->n; ++p)
        if (mask & (1u << p)) v.push_back(p);
    return v;
}

std::optional<CanonicalWitness> WitnessSearch::find(std::span<const int> colors) const {
    for (size_t w = 0; w < hom_bc_.size(); ++w)
        for (std::uint32_t mask : subset_order_)
            if (check(colors, static_cast<int>(w), mask))
                return CanonicalWitness{hom_bc_[w], witness_positions(mask)};
    return std::nullopt;
}

std::optional<CanonicalWitness> find_canonical_witness(const Coloring& chi, const StructureRef& a,
                                                       const StructureRef& b, const StructureRef& c) {
    WitnessSearch s(a, b, c);
    if (s.hom_ab().empty()) throw input_error("find_canonical_witness: hom(a,b) is empty");
    if (chi.colors.size() != s.hom_ac().size())
        throw input_error("find_canonical_witness: coloring does not align with hom(a,c)");
    return s.find(chi.colors);
}

const char* outcome_name(CanOutcome o) {
    switch (o) {
        case CanOutcome::Holds: return "holds";
        case CanOutcome::Fails: return "fails";
        case CanOutcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

CanVerdict verify_can_arrow(const StructureRef& a, const StructureRef& b, const StructureRef& c,
                            const VerifyOptions& opts) {
    WitnessSearch search(a, b, c);
    if (search.hom_ab().empty()) throw input_error("verify_can_arrow: hom(a,b) is empty");

    const int n_points = static_cast<int>(search.hom_ac().size());
    const std::uint64_t total = bell_number(n_points);
    const std::uint64_t limit = std::min(total, opts.max_colorings);

    struct Fail {
        std::uint64_t index;
        std::vector<int> colors;
    };
    constexpr std::uint64_t kBatch = 1024;
    const std::uint64_t batches = limit == 0 ? 0 : (limit + kBatch - 1) / kBatch;

    std::atomic<std::uint64_t> next_batch{0};
    std::atomic<std::uint64_t> first_fail_batch{~0ull};
    std::mutex fail_mutex;
    std::vector<Fail> fails;

    auto run_batch = [&](std::uint64_t bidx) {
        const std::uint64_t begin = bidx * kBatch;
        const std::uint64_t end = std::min(begin + kBatch, limit);
        std::vector<int> rgs = rgs_unrank(n_points, begin);
        for (std::uint64_t i = begin; i < end; ++i) {
            auto wit = search.find(rgs);
            if (opts.observer) {
                auto full = wit ? std::optional<CanonicalWitness>(*wit) : std::nullopt;
                opts.observer(i, rgs, full);
            }
            if (!wit) {
                std::scoped_lock lk(fail_mutex);
                fails.push_back({i, rgs});
                std::uint64_t cur = first_fail_batch.load();
                while (bidx < cur && !first_fail_batch.compare_exchange_weak(cur, bidx)) {
                }
                break; // later colorings in this batch cannot beat index i
            }
            if (i + 1 < end) rgs_next(rgs);
        }
    };

    const int workers = resolve_workers(opts.workers);
    auto worker_body = [&] {
        while (true) {
            std::uint64_t bidx = next_batch.fetch_add(1);
            if (bidx >= batches) return;
            // batches are claimed in order, so everything before a known
            // failing batch is already claimed; skipping later batches keeps
            // the minimal failure intact
            if (bidx > first_fail_batch.load()) return;
            run_batch(bidx);
        }
    };
    if (workers == 1) {
        worker_body();
    } else {
        std::vector<std::thread> pool;
        for (int w = 1; w < workers; ++w) pool.emplace_back(worker_body);
        worker_body();
        for (auto& t : pool) t.join();
    }

    CanVerdict verdict;
    verdict.total_colorings = total;
    if (!fails.empty()) {
        auto best = std::min_element(fails.begin(), fails.end(),
                                     [](const Fail& x, const Fail& y) { return x.index < y.index; });
        verdict.outcome = CanOutcome::Fails;
        verdict.counterexample = Coloring{best->colors};
        verdict.counterexample_index = best->index;
        verdict.colorings_examined = best->index + 1;
    } else if (limit < total) {
        verdict.outcome = CanOutcome::Inconclusive;
        verdict.colorings_examined = limit;
    } else {
        verdict.outcome = CanOutcome::Holds;
        verdict.colorings_examined = total;
    }
    return verdict;
}

ErcReport erc_search(int k, int m, int n_max, const VerifyOptions& opts) {
    if (k < 1 || m < k || n_max < m)
        throw input_error("erc_search: need 1 <= k <= m <= n_max");
    ErcReport report;
    report.k = k;
    report.m = m;
    report.n_max = n_max;
    auto ka = share(make_chain(k));
    auto ma = share(make_chain(m));
    for (int n = m; n <= n_max; ++n) {
        CanVerdict v = verify_can_arrow(ka, ma, share(make_chain(n)), opts);
        ErcStep step{n, v.outcome, v.colorings_examined, v.total_colorings, v.counterexample};
        report.steps.push_back(std::move(step));
        if (v.outcome == CanOutcome::Holds) {
            report.found_n = n;
            break;
        }
        if (v.outcome == CanOutcome::Inconclusive) break;
    }
    return report;
}

} // namespace canram
