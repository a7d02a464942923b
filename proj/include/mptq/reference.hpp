#pragma once

// Serial reference kernels. They share no code with the OpenMP kernels
// beyond the pair tables and the sample generator, and exist so the
// parallel versions can be checked and benchmarked against them.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "mptq/pair_table.hpp"
#include "mptq/sampling.hpp"

namespace mptq::reference {

struct SearchResult {
    std::uint64_t examined = 0;
    std::vector<std::vector<std::uint32_t>> found;  // lexicographic
};

/// Recursive single-threaded DFS with incremental counters; records every
/// subset whose symmetric class count exceeds its antisymmetric one.
SearchResult dfs_search(const PairTable& table, std::size_t min_size = 1,
                        std::size_t max_size = std::numeric_limits<std::size_t>::max());

/// Same sampling scheme as density_estimate(), sequential, with each sample
/// classified by materializing its derived sets.
DensityEstimate density_estimate(std::uint64_t n, std::uint64_t samples, std::uint64_t seed);

}  // namespace mptq::reference
