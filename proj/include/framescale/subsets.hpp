#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace framescale {

/// Visits the k-element subsets of {0, ..., n-1} in lexicographic order.
/// `visit` receives the sorted indices and returns true to stop early.
/// Returns true if the visit was stopped.
template <class Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
    if (k > n) return false;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        if (visit(std::span<const std::size_t>(idx))) return true;
        // Advance the rightmost index that still has room.
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline std::uint64_t subset_mask(std::span<const std::size_t> indices) {
    std::uint64_t m = 0;
    for (std::size_t i : indices) m |= std::uint64_t{1} << i;
    return m;
}

}  // namespace framescale
