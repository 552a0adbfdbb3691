#include "canram/enumerate.hpp"

#include <cstdint>

#include "canram/errors.hpp"

namespace canram {

namespace {

constexpr int kMaskPairLimit = 20;

std::vector<Pair> mask_to_pairs(const std::vector<Pair>& pool, std::uint32_t mask) {
    std::vector<Pair> out;
    for (std::size_t k = 0; k < pool.size(); ++k)
        if (mask >> k & 1u) out.push_back(pool[k]);
    return out;
}

void check_pool(std::size_t size, const char* who) {
    if (size > kMaskPairLimit)
        throw budget_exceeded(std::string(who) + ": too many slots for mask enumeration",
                              static_cast<std::uint64_t>(size));
}

} // namespace

std::vector<Pair> up_pairs(int n) {
    std::vector<Pair> out;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) out.push_back({x, y});
    return out;
}

std::vector<OrderedStructure> all_ordered_graphs(int n) {
    const auto pool = up_pairs(n);
    check_pool(pool.size(), "all_ordered_graphs");
    std::vector<OrderedStructure> out;
    for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask)
        out.push_back(make_graph(n, mask_to_pairs(pool, mask)));
    return out;
}

std::vector<OrderedStructure> all_reflexive_digraphs(int n) {
    const auto pool = up_pairs(n);
    check_pool(pool.size(), "all_reflexive_digraphs");
    std::vector<OrderedStructure> out;
    for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask)
        out.push_back(make_digraph_up(n, mask_to_pairs(pool, mask)));
    return out;
}

std::vector<OrderedStructure> all_tournaments(int n) {
    const auto pool = up_pairs(n);
    check_pool(pool.size(), "all_tournaments");
    std::vector<OrderedStructure> out;
    for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
        std::vector<Pair> arcs;
        for (std::size_t k = 0; k < pool.size(); ++k) {
            auto [x, y] = pool[k];
            if (mask >> k & 1u)
                arcs.push_back({x, y});
            else
                arcs.push_back({y, x});
        }
        out.push_back(make_tournament(n, arcs));
    }
    return out;
}

std::vector<OrderedStructure> all_posets(int n) {
    const auto pool = up_pairs(n);
    check_pool(pool.size(), "all_posets");
    std::vector<OrderedStructure> out;
    for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
        const auto pairs = mask_to_pairs(pool, mask);
        bool transitive = true;
        for (const auto& [a, b] : pairs) {
            for (const auto& [c, d] : pairs)
                if (b == c && !pair_present(pairs, a, d)) {
                    transitive = false;
                    break;
                }
            if (!transitive) break;
        }
        if (transitive) out.push_back(make_poset_strict(n, pairs));
    }
    return out;
}

std::vector<OrderedStructure> all_one_binary_relational(int n) {
    const int slots = n * n;
    check_pool(static_cast<std::size_t>(slots), "all_one_binary_relational");
    std::vector<OrderedStructure> out;
    for (std::uint32_t mask = 0; mask < (1u << slots); ++mask) {
        TupleFamily rel;
        for (int k = 0; k < slots; ++k)
            if (mask >> k & 1u) rel.push_back({k / n, k % n});
        out.push_back(make_relational(n, {2}, {rel}));
    }
    return out;
}

std::vector<OrderedStructure> all_metrics(int n, std::span<const Rational> positive_values) {
    const auto pool = up_pairs(n);
    std::vector<OrderedStructure> out;
    std::vector<std::size_t> digits(pool.size(), 0);
    const std::size_t base = positive_values.size();
    if (n >= 2 && base == 0) return out;
    while (true) {
        std::vector<Rational> d(static_cast<std::size_t>(n) * n, rat(0));
        for (std::size_t k = 0; k < pool.size(); ++k) {
            auto [x, y] = pool[k];
            d[static_cast<std::size_t>(x) * n + y] = positive_values[digits[k]];
            d[static_cast<std::size_t>(y) * n + x] = positive_values[digits[k]];
        }
        OrderedStructure m = make_metric(n, d);
        if (validate(m).ok()) out.push_back(std::move(m));
        std::size_t k = 0;
        for (; k < digits.size(); ++k) {
            if (++digits[k] < base) break;
            digits[k] = 0;
        }
        if (k == digits.size()) break;
    }
    return out;
}

} // namespace canram
