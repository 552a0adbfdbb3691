#include "canram/partitions.hpp"

#include <algorithm>
#include <stdexcept>

#include "canram/errors.hpp"

namespace canram {

namespace {

// completions[r][m]: number of ways to fill r remaining positions when the
// prefix maximum is m. completions[r][m] = (m+1)*completions[r-1][m] + completions[r-1][m+1].
std::vector<std::vector<std::uint64_t>> completion_table(int n) {
    std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 2, 0));
    for (int m = 0; m <= n + 1; ++m) c[0][m] = 1;
    for (int r = 1; r <= n; ++r)
        for (int m = n; m >= 0; --m)
            c[r][m] = static_cast<std::uint64_t>(m + 1) * c[r - 1][m] + c[r - 1][m + 1];
    return c;
}

void check_size(int n) {
    if (n < 0 || n > kMaxPartitionSize)
        throw input_error("partition enumeration supports sizes 0.." + std::to_string(kMaxPartitionSize));
}

} // namespace

std::uint64_t bell_number(int n) {
    check_size(n);
    if (n == 0) return 1;
    return completion_table(n - 1).back()[0];
}

std::vector<int> rgs_first(int n) {
    check_size(n);
    return std::vector<int>(n, 0);
}

bool rgs_next(std::vector<int>& a) {
    const int n = static_cast<int>(a.size());
    // rightmost position that can still grow, given its prefix maximum
    for (int i = n - 1; i >= 1; --i) {
        int prefix_max = *std::max_element(a.begin(), a.begin() + i);
        if (a[i] <= prefix_max) {
            ++a[i];
            std::fill(a.begin() + i + 1, a.end(), 0);
            return true;
        }
    }
    return false;
}

std::vector<int> rgs_unrank(int n, std::uint64_t index) {
    check_size(n);
    std::vector<int> a(n, 0);
    if (n == 0) {
        if (index != 0) throw input_error("rgs_unrank: index out of range");
        return a;
    }
    auto table = completion_table(n - 1);
    int m = 0;
    for (int i = 1; i < n; ++i) {
        int remaining = n - 1 - i;
        std::uint64_t per_value = table[remaining][m];
        std::uint64_t low = static_cast<std::uint64_t>(m + 1) * per_value;
        if (index < low) {
            a[i] = static_cast<int>(index / per_value);
            index %= per_value;
        } else {
            a[i] = m + 1;
            index -= low;
            ++m;
        }
    }
    if (index != 0) throw input_error("rgs_unrank: index out of range");
    return a;
}

bool is_restricted_growth(const std::vector<int>& a) {
    int m = -1;
    for (int v : a) {
        if (v < 0 || v > m + 1) return false;
        m = std::max(m, v);
    }
    return true;
}

std::uint64_t for_each_partition(int n, std::uint64_t cap,
                                 const std::function<void(const std::vector<int>&)>& fn) {
    check_size(n);
    std::uint64_t seen = 0;
    std::vector<int> a = rgs_first(n);
    while (true) {
        if (seen == cap) return seen;
        fn(a);
        ++seen;
        if (!rgs_next(a)) return seen;
    }
}

} // namespace canram
