#include "mptq/reference.hpp"

#include <algorithm>

#include "mptq/setops.hpp"

namespace mptq::reference {

namespace {

struct Walker {
    PairCounters counters;
    std::uint32_t m;
    std::size_t min_size;
    std::size_t max_size;
    SearchResult out;

    void visit_from(std::uint32_t next)
    {
        ++out.examined;
        if (counters.size() >= min_size && counters.sym_size() > counters.anti_size()) {
            out.found.emplace_back(counters.members().begin(), counters.members().end());
        }
        if (counters.size() >= max_size) return;
        for (std::uint32_t i = next; i < m; ++i) {
            counters.add(i);
            visit_from(i + 1);
            counters.remove_last();
        }
    }
};

}  // namespace

SearchResult dfs_search(const PairTable& table, std::size_t min_size, std::size_t max_size)
{
    Walker w{PairCounters(table), static_cast<std::uint32_t>(table.size), min_size, max_size, {}};
    w.visit_from(0);
    return std::move(w.out);
}

DensityEstimate density_estimate(std::uint64_t n, std::uint64_t samples, std::uint64_t seed)
{
    DensityEstimate est;
    est.n = n;
    est.samples = samples;
    est.seed = seed;
    std::vector<std::uint32_t> subset;
    for (std::size_t shard = 0; shard < kDensityShards; ++shard) {
        auto rng = shard_generator(seed, shard);
        auto [begin, end] = shard_range(samples, shard);
        for (auto s = begin; s < end; ++s) {
            draw_subset(rng, n, subset);
            if (subset.empty()) continue;
            std::vector<std::int64_t> add;
            std::vector<FactoredNonzero> mult;
            for (auto i : subset) {
                add.push_back(static_cast<std::int64_t>(i) + 1);
                mult.push_back(FactoredNonzero::from_integer(static_cast<std::int64_t>(i) + 1));
            }
            est.mptq_hits += classify(MultiplicativeSet(std::move(mult))).is_mptq();
            est.mstd_hits += classify(AdditiveSet(std::move(add))).is_mstd();
        }
    }
    return est;
}

}  // namespace mptq::reference
