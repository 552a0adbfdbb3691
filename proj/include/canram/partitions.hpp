#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace canram {

// Set partitions of {0..n-1} are enumerated as restricted growth strings in
// lexicographic order: a[0] = 0 and a[i] <= 1 + max(a[0..i-1]).

inline constexpr int kMaxPartitionSize = 25; // Bell(25) still fits in uint64

std::uint64_t bell_number(int n);

// First string (all zeros). n = 0 gives the empty string, which counts as the
// single partition of the empty set.
std::vector<int> rgs_first(int n);

// Advances to the lexicographic successor in place; false when exhausted.
bool rgs_next(std::vector<int>& a);

// The index-th string in lexicographic order, 0-based.
std::vector<int> rgs_unrank(int n, std::uint64_t index);

bool is_restricted_growth(const std::vector<int>& a);

// Streams partitions in order, stopping early when cap is hit.
// Returns the number of partitions visited; visited < bell_number(n) only
// when the cap cut the enumeration short.
std::uint64_t for_each_partition(int n, std::uint64_t cap,
                                 const std::function<void(const std::vector<int>&)>& fn);

} // namespace canram
