#include "doctest.h"

#include <cmath>

#include "mptq/fixtures.hpp"
#include "mptq/reference.hpp"
#include "mptq/sampling.hpp"

using namespace mptq;

TEST_CASE("wilson interval")
{
    const double z = 1.959963984540054;
    auto zero = wilson_interval(0, 10000);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper == doctest::Approx(z * z / (10000 + z * z)).epsilon(1e-12));
    auto half = wilson_interval(50, 100);
    CHECK(half.lower == doctest::Approx(0.4038).epsilon(1e-3));
    CHECK(half.upper == doctest::Approx(0.5962).epsilon(1e-3));
    auto all = wilson_interval(7, 7);
    CHECK(all.upper == 1.0);
}

TEST_CASE("draw_subset and shards")
{
    std::uint64_t total = 0;
    for (std::size_t s = 0; s < kDensityShards; ++s) {
        auto [b, e] = shard_range(1000, s);
        total += e - b;
    }
    CHECK(total == 1000);

    auto rng = shard_generator(1, 0);
    std::vector<std::uint32_t> out;
    std::uint64_t included = 0;
    for (int i = 0; i < 2000; ++i) {
        draw_subset(rng, 100, out);
        for (auto x : out) CHECK(x < 100);
        CHECK(std::is_sorted(out.begin(), out.end()));
        included += out.size();
    }
    // each element included with probability 1/2
    CHECK(std::abs(static_cast<double>(included) / 200000.0 - 0.5) < 0.01);
}

TEST_CASE("density estimate is deterministic and thread-count independent")
{
    auto a = density_estimate(20, 3000, 77, 1);
    auto b = density_estimate(20, 3000, 77, 4);
    auto c = density_estimate(20, 3000, 77, 0);
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a == reference::density_estimate(20, 3000, 77));
    CHECK_FALSE(a == density_estimate(20, 3000, 78, 1));
    CHECK(a.mptq_hits == 0);
    CHECK(a.mstd_hits <= a.samples);
}

TEST_CASE("no MPTQ samples below 37")
{
    auto est = density_estimate(36, 10000, 2024);
    CHECK(est.mptq_hits == 0);
    CHECK(est.samples == 10000);
    CHECK_THROWS_AS(density_estimate(36, 0, 1), InputError);
}

TEST_CASE("grid search returns verified MPTQ subsets of the grid")
{
    auto grid = two_three_grid(6, 6);
    CHECK(grid.size() == 49);
    for (auto strategy : {GridStrategy::hill_climb, GridStrategy::random_restart}) {
        auto finds = grid_search(6, 6, strategy, 5, 20000);
        for (const auto& f : finds) {
            CHECK(f.report.is_mptq());
            for (const auto& x : f.set) CHECK(grid.contains(x));
        }
        auto again = grid_search(6, 6, strategy, 5, 20000);
        REQUIRE(again.size() == finds.size());
        for (std::size_t i = 0; i < finds.size(); ++i) CHECK(again[i].set == finds[i].set);
    }
    for (const auto& g : grid_sets()) {
        for (const auto& x : g) CHECK(grid.contains(x));
    }
    CHECK_THROWS_AS(grid_search(6, 6, GridStrategy::hill_climb, 1, 0), InputError);
    CHECK(parse_grid_strategy("hill-climb") == GridStrategy::hill_climb);
    CHECK_THROWS_AS(parse_grid_strategy("anneal"), InputError);
}
