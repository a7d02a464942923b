#pragma once

// Randomized probes: Monte Carlo density of MPTQ/MSTD subsets of {1..n} and
// a verifier-backed local search over the {2^a 3^b} grid.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "mptq/setops.hpp"

namespace mptq {

struct ProportionInterval {
    double lower = 0;
    double upper = 0;
};

/// Wilson score interval at 95% confidence.
ProportionInterval wilson_interval(std::uint64_t hits, std::uint64_t samples);

struct DensityEstimate {
    std::uint64_t n = 0;
    std::uint64_t samples = 0;
    std::uint64_t mptq_hits = 0;
    std::uint64_t mstd_hits = 0;
    std::uint64_t seed = 0;

    double mptq_proportion() const { return samples ? double(mptq_hits) / double(samples) : 0.0; }
    double mstd_proportion() const { return samples ? double(mstd_hits) / double(samples) : 0.0; }
    ProportionInterval mptq_interval() const { return wilson_interval(mptq_hits, samples); }
    ProportionInterval mstd_interval() const { return wilson_interval(mstd_hits, samples); }

    friend bool operator==(const DensityEstimate&, const DensityEstimate&) = default;
};

/// Samples are split into a fixed number of shards, each with its own
/// generator seeded from (seed, shard), so the estimate does not depend on
/// the number of worker threads.
inline constexpr std::size_t kDensityShards = 64;

std::mt19937_64 shard_generator(std::uint64_t seed, std::size_t shard);

/// Uniform random subset of {1..n} as 0-based indices (element i+1).
void draw_subset(std::mt19937_64& rng, std::uint64_t n, std::vector<std::uint32_t>& out);

/// [begin, end) of the samples owned by a shard.
std::pair<std::uint64_t, std::uint64_t> shard_range(std::uint64_t samples, std::size_t shard);

DensityEstimate density_estimate(std::uint64_t n, std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

enum class GridStrategy { random_restart, hill_climb };

GridStrategy parse_grid_strategy(std::string_view text);
std::string_view grid_strategy_name(GridStrategy s);

struct GridFind {
    MultiplicativeSet set;
    ClassificationReport report;
};

/// {2^a 3^b : 0 <= a <= max_e2, 0 <= b <= max_e3}
MultiplicativeSet two_three_grid(unsigned max_e2, unsigned max_e3);

/// Local search for MPTQ subsets of the grid. `budget` bounds the number of
/// candidate evaluations. Returned sets are distinct and re-verified with
/// classify().
std::vector<GridFind> grid_search(unsigned max_e2, unsigned max_e3, GridStrategy strategy, std::uint64_t seed,
                                  std::uint64_t budget);

}  // namespace mptq
