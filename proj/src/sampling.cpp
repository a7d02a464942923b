#include "mptq/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "mptq/pair_table.hpp"

namespace mptq {

ProportionInterval wilson_interval(std::uint64_t hits, std::uint64_t samples)
{
    if (samples == 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / n;
    const double denom = 1.0 + z * z / n;
    const double centre = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::mt19937_64 shard_generator(std::uint64_t seed, std::size_t shard)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shard)};
    return std::mt19937_64(seq);
}

void draw_subset(std::mt19937_64& rng, std::uint64_t n, std::vector<std::uint32_t>& out)
{
    out.clear();
    std::uint64_t bits = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (i % 64 == 0) bits = rng();
        if (bits >> (i % 64) & 1u) out.push_back(static_cast<std::uint32_t>(i));
    }
}

std::pair<std::uint64_t, std::uint64_t> shard_range(std::uint64_t samples, std::size_t shard)
{
    const auto begin = samples * shard / kDensityShards;
    const auto end = samples * (shard + 1) / kDensityShards;
    return {begin, end};
}

DensityEstimate density_estimate(std::uint64_t n, std::uint64_t samples, std::uint64_t seed, unsigned threads)
{
    if (samples == 0) throw InputError("density_estimate: samples must be at least 1");
    if (n == 0) throw InputError("density_estimate: n must be at least 1");

    std::vector<FactoredNonzero> mult;
    std::vector<std::int64_t> add;
    for (std::uint64_t x = 1; x <= n; ++x) {
        mult.push_back(FactoredNonzero::from_integer(static_cast<std::int64_t>(x)));
        add.push_back(static_cast<std::int64_t>(x));
    }
    const PairTable mult_table = multiplicative_pair_table(mult);
    const PairTable add_table = additive_pair_table(add);

    std::uint64_t mptq_hits = 0, mstd_hits = 0;
    const int nthreads = threads ? static_cast<int>(threads) : omp_get_max_threads();

#pragma omp parallel num_threads(nthreads) reduction(+ : mptq_hits, mstd_hits)
    {
        DistinctCounter mult_counter(mult_table);
        DistinctCounter add_counter(add_table);
        std::vector<std::uint32_t> subset;
#pragma omp for schedule(dynamic, 1)
        for (std::size_t shard = 0; shard < kDensityShards; ++shard) {
            auto rng = shard_generator(seed, shard);
            auto [begin, end] = shard_range(samples, shard);
            for (auto s = begin; s < end; ++s) {
                draw_subset(rng, n, subset);
                if (subset.empty()) continue;
                auto [products, quotients] = mult_counter.count(subset);
                auto [sums, differences] = add_counter.count(subset);
                mptq_hits += products > quotients;
                mstd_hits += sums > differences;
            }
        }
    }
    DensityEstimate out;
    out.n = n;
    out.samples = samples;
    out.seed = seed;
    out.mptq_hits = mptq_hits;
    out.mstd_hits = mstd_hits;
    return out;
}

GridStrategy parse_grid_strategy(std::string_view text)
{
    if (text == "hill_climb" || text == "hill-climb") return GridStrategy::hill_climb;
    if (text == "random_restart" || text == "random-restart") return GridStrategy::random_restart;
    throw InputError("unknown grid strategy '" + std::string(text) + "'");
}

std::string_view grid_strategy_name(GridStrategy s)
{
    return s == GridStrategy::hill_climb ? "hill_climb" : "random_restart";
}

MultiplicativeSet two_three_grid(unsigned max_e2, unsigned max_e3)
{
    const auto two = FactoredNonzero::from_integer(2);
    const auto three = FactoredNonzero::from_integer(3);
    std::vector<FactoredNonzero> v;
    for (unsigned a = 0; a <= max_e2; ++a) {
        for (unsigned b = 0; b <= max_e3; ++b) v.push_back(two.pow(a) * three.pow(b));
    }
    return MultiplicativeSet(std::move(v));
}

std::vector<GridFind> grid_search(unsigned max_e2, unsigned max_e3, GridStrategy strategy, std::uint64_t seed,
                                  std::uint64_t budget)
{
    if (budget == 0) throw InputError("grid_search: budget must be positive");
    const MultiplicativeSet grid = two_three_grid(max_e2, max_e3);
    const PairTable table = multiplicative_pair_table(grid.elements());
    DistinctCounter counter(table);
    const auto m = static_cast<std::uint32_t>(grid.size());

    std::mt19937_64 rng(seed);
    std::set<std::vector<std::uint32_t>> hits;
    std::uint64_t evaluations = 0;

    std::vector<char> in(m, 0);
    std::vector<std::uint32_t> members;
    auto collect = [&] {
        members.clear();
        for (std::uint32_t i = 0; i < m; ++i) {
            if (in[i]) members.push_back(i);
        }
    };
    auto evaluate = [&]() -> std::int64_t {
        collect();
        ++evaluations;
        auto [p, q] = counter.count(members);
        const auto gap = static_cast<std::int64_t>(p) - static_cast<std::int64_t>(q);
        if (gap > 0) hits.insert(members);
        return gap;
    };

    // Restarts draw subsets of 8..14 elements; MPTQ sets here need >= 8.
    const std::uint32_t lo = std::min<std::uint32_t>(8, m), hi = std::min<std::uint32_t>(14, m);
    std::uniform_int_distribution<std::uint32_t> size_dist(lo, hi);
    std::uniform_int_distribution<std::uint32_t> pick(0, m - 1);
    constexpr std::uint64_t patience = 400;

    while (evaluations < budget) {
        std::fill(in.begin(), in.end(), 0);
        std::vector<std::uint32_t> order(m);
        for (std::uint32_t i = 0; i < m; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        const std::uint32_t k = size_dist(rng);
        for (std::uint32_t i = 0; i < k; ++i) in[order[i]] = 1;
        std::int64_t current = evaluate();
        if (strategy == GridStrategy::random_restart) continue;

        std::uint64_t stale = 0;
        while (stale < patience && evaluations < budget) {
            const std::uint32_t flip = pick(rng);
            in[flip] ^= 1;
            collect();
            if (members.size() < 2) {
                in[flip] ^= 1;
                ++stale;
                continue;
            }
            const std::int64_t gap = evaluate();
            if (gap >= current) {
                stale = gap > current ? 0 : stale + 1;
                current = gap;
            } else {
                in[flip] ^= 1;
                ++stale;
            }
        }
    }

    std::vector<GridFind> out;
    for (const auto& idx : hits) {
        std::vector<FactoredNonzero> v;
        for (auto i : idx) v.push_back(grid[i]);
        MultiplicativeSet s(std::move(v));
        auto report = classify(s);
        if (!report.is_mptq()) throw std::logic_error("grid_search: candidate failed re-verification");
        out.push_back({std::move(s), report});
    }
    return out;
}

}  // namespace mptq
