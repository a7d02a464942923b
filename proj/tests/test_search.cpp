#include "doctest.h"

#include <array>
#include <atomic>
#include <map>
#include <random>
#include <set>

#include "mptq/fixtures.hpp"
#include "mptq/pair_table.hpp"
#include "mptq/reference.hpp"
#include "mptq/search.hpp"
#include "mptq/transforms.hpp"
#include "oracle.hpp"

using namespace mptq;

namespace {

FactoredNonzero fv(std::int64_t v) { return FactoredNonzero::from_integer(v); }

std::vector<std::vector<std::uint32_t>> indices_of(const SearchState& state)
{
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& t : state.tasks) {
        for (const auto& f : t.found) out.push_back(f.indices);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// {2^0..2^14} with 3 and 5 set aside: the MPTQ subsets are exactly the
// exponentials of MSTD subsets of {0..14}.
SearchUniverse powers_of_two()
{
    SearchUniverse u;
    u.mode = SearchMode::mptq;
    for (int e = 0; e <= 14; ++e) u.multiplicative.push_back(fv(2).pow(e));
    return u;
}

using Vec3 = std::array<int, 3>;  // exponents of 2, 3, 5

oracle::Sizes lattice_sizes(const std::vector<Vec3>& v)
{
    std::set<Vec3> s, d;
    for (const auto& x : v) {
        for (const auto& y : v) {
            s.insert({x[0] + y[0], x[1] + y[1], x[2] + y[2]});
            d.insert({x[0] - y[0], x[1] - y[1], x[2] - y[2]});
        }
    }
    return {s.size(), d.size()};
}

}  // namespace

TEST_CASE("excluded primes")
{
    CHECK(excluded_primes(36) == std::vector<Prime>{19, 23, 29, 31});
    CHECK(excluded_primes(8) == std::vector<Prime>{5, 7});
    CHECK(excluded_primes(2) == std::vector<Prime>{2});
    CHECK(excluded_primes(30) == std::vector<Prime>{17, 19, 23, 29});
}

TEST_CASE("expansion_count")
{
    CHECK(expansion_count(0, 4) == 1);
    CHECK(expansion_count(1, 2) == 3);
    CHECK(expansion_count(2, 4) == 1 + 4 + 6);
    CHECK(expansion_count(9, 4) == 16);
    CHECK(expansion_count(3, 0) == 1);
}

TEST_CASE("pair counters track derived-set sizes")
{
    std::vector<FactoredNonzero> u;
    std::vector<oracle::Rational> ru;
    for (std::int64_t x : {1, -1, 2, 3, -4, 6, 9, 12, -18, 27, 36}) {
        u.push_back(fv(x));
        ru.emplace_back(x);
    }
    u.push_back(parse_number("3/2"));
    ru.emplace_back(3, 2);
    const PairTable table = multiplicative_pair_table(u);
    PairCounters counters(table);
    DistinctCounter distinct(table);
    std::mt19937_64 rng(1);
    std::vector<std::uint32_t> members;
    for (int step = 0; step < 3000; ++step) {
        if (!members.empty() && (members.size() == u.size() || rng() % 3 == 0)) {
            counters.remove_last();
            members.pop_back();
        } else {
            std::uint32_t i;
            do i = static_cast<std::uint32_t>(rng() % u.size());
            while (std::find(members.begin(), members.end(), i) != members.end());
            counters.add(i);
            members.push_back(i);
        }
        std::vector<oracle::Rational> sub;
        for (auto i : members) sub.push_back(ru[i]);
        auto s = oracle::multiplicative(sub);
        REQUIRE(counters.sym_size() == s.dominant);
        REQUIRE(counters.anti_size() == s.other);
        auto [p, q] = distinct.count(members);
        REQUIRE(p == s.dominant);
        REQUIRE(q == s.other);
    }
}

TEST_CASE("interval search visits every subset and matches the naive oracle")
{
    for (std::uint64_t n = 1; n <= 12; ++n) {
        SearchOptions opt;
        opt.parallel_width = 3;
        auto state = plan_interval_search(n, SearchMode::mptq, opt);
        auto out = run_search(state, {2, 0, nullptr});
        CHECK(out.complete);
        const std::size_t m = state.universe.size();
        CHECK(m == n - excluded_primes(n).size());
        CHECK(state.subsets_examined() == (std::uint64_t{1} << m));

        std::vector<oracle::Rational> ru;
        for (const auto& x : state.universe.multiplicative) ru.push_back(oracle::to_rational(x));
        auto naive = oracle::all_dominant_subsets(m, [&](const std::vector<std::uint32_t>& idx) {
            std::vector<oracle::Rational> v;
            for (auto i : idx) v.push_back(ru[i]);
            return oracle::multiplicative(v);
        });
        CHECK(indices_of(state) == naive);
        CHECK(summarize(state).expanded_total == 0);
    }
}

TEST_CASE("mstd interval search matches the naive oracle")
{
    for (std::uint64_t n : {8u, 12u, 15u}) {
        auto state = plan_interval_search(n, SearchMode::mstd, {});
        run_search(state);
        std::vector<std::int64_t> u = state.universe.additive;
        auto naive = oracle::all_dominant_subsets(u.size(), [&](const std::vector<std::uint32_t>& idx) {
            std::vector<std::int64_t> v;
            for (auto i : idx) v.push_back(u[i]);
            return oracle::additive(v);
        });
        CHECK(indices_of(state) == naive);
        if (n == 15) CHECK_FALSE(naive.empty());
    }
}

TEST_CASE("prime-pruned universe search is complete")
{
    const std::vector<Prime> excluded{3, 5};
    auto state = plan_universe_search(powers_of_two(), excluded, {});
    run_search(state);
    auto report = summarize(state);
    REQUIRE(report.complete);
    REQUIRE_FALSE(report.found.empty());

    // Full universe with 3 and 5 put back, classified by an exponent-vector oracle.
    std::vector<Vec3> full;
    for (int e = 0; e <= 14; ++e) full.push_back({e, 0, 0});
    full.push_back({0, 1, 0});
    full.push_back({0, 0, 1});
    auto naive = oracle::all_dominant_subsets(full.size(), [&](const std::vector<std::uint32_t>& idx) {
        std::vector<Vec3> v;
        for (auto i : idx) v.push_back(full[i]);
        return lattice_sizes(v);
    });

    // Every MPTQ subset of the full universe is a found set plus a subset of
    // the excluded primes, and every found set reports exactly how many.
    std::map<std::vector<std::uint32_t>, std::uint64_t> per_base;
    for (const auto& s : naive) {
        std::vector<std::uint32_t> base;
        for (auto i : s) {
            if (i < 15) base.push_back(i);
        }
        ++per_base[base];
    }
    auto found = indices_of(state);
    CHECK(per_base.size() == found.size());
    std::uint64_t total = 0;
    for (const auto& t : state.tasks) {
        for (const auto& f : t.found) {
            auto it = per_base.find(f.indices);
            REQUIRE(it != per_base.end());
            CHECK(it->second == f.expansions);
            total += f.expansions;
        }
    }
    CHECK(report.expanded_total == naive.size());
    CHECK(total == naive.size());

    for (const auto& rs : report.found) {
        auto r = classify(*rs.multiplicative);
        CHECK(r.is_mptq());
        CHECK(r.k_special == rs.report.k_special);
        CHECK(r.product_size == rs.report.product_size);
        auto expanded = expand_with_primes(*rs.multiplicative, r.k_special, excluded);
        CHECK(expanded.size() == rs.expansions);
    }
}

TEST_CASE("parallel search agrees with the serial reference")
{
    auto u = powers_of_two();
    const PairTable table = multiplicative_pair_table(u.multiplicative);
    auto ref = reference::dfs_search(table);
    CHECK(ref.examined == (std::uint64_t{1} << 15));
    for (unsigned width : {0u, 1u, 4u, 9u}) {
        for (unsigned threads : {1u, 4u}) {
            SearchOptions opt;
            opt.parallel_width = width;
            auto state = plan_universe_search(u, {}, opt);
            run_search(state, {threads, 0, nullptr});
            CHECK(state.subsets_examined() == ref.examined);
            CHECK(indices_of(state) == ref.found);
        }
    }

    SearchOptions capped;
    capped.max_size = 7;
    capped.parallel_width = 5;
    auto state = plan_universe_search(u, {}, capped);
    run_search(state);
    auto ref7 = reference::dfs_search(table, 1, 7);
    CHECK(indices_of(state) == ref7.found);
    CHECK(state.subsets_examined() == ref7.examined);
    CHECK(ref7.found.empty());
}

TEST_CASE("counters are cross-checked against classify on every node")
{
    SearchOptions opt;
    opt.verify_every = 1;
    opt.parallel_width = 2;
    auto state = plan_interval_search(14, SearchMode::mptq, opt);
    CHECK_NOTHROW(run_search(state));
    auto mstd = plan_interval_search(11, SearchMode::mstd, opt);
    CHECK_NOTHROW(run_search(mstd));
}

TEST_CASE("min_size and report limits")
{
    SearchOptions opt;
    opt.min_size = 9;
    auto state = plan_universe_search(powers_of_two(), {}, opt);
    run_search(state);
    for (const auto& f : indices_of(state)) CHECK(f.size() >= 9);

    SearchOptions limited;
    limited.report_all = false;
    limited.report_limit = 3;
    auto s2 = plan_universe_search(powers_of_two(), {}, limited);
    run_search(s2);
    auto r = summarize(s2);
    CHECK(r.found.size() == 3);
    CHECK(r.found_count > 3);
}

TEST_CASE("budgeted runs resume to the same result through checkpoints")
{
    SearchOptions opt;
    opt.parallel_width = 3;
    auto full = plan_interval_search(16, SearchMode::mstd, opt);
    run_search(full);
    const auto expected = indices_of(full);
    REQUIRE_FALSE(expected.empty());

    auto state = plan_interval_search(16, SearchMode::mstd, opt);
    int runs = 0;
    for (;;) {
        auto out = run_search(state, {2, 5000, nullptr});
        ++runs;
        // round-trip through the on-disk format between slices
        auto j = checkpoint_to_json(state);
        state = checkpoint_from_json(nlohmann::json::parse(j.dump()));
        CHECK(checkpoint_to_json(state) == j);
        if (out.complete) break;
        REQUIRE(runs < 1000);
    }
    CHECK(runs > 2);
    CHECK(state.complete());
    CHECK(state.subsets_examined() == full.subsets_examined());
    CHECK(indices_of(state) == expected);
}

TEST_CASE("cancellation leaves a resumable state")
{
    std::atomic<bool> cancel{true};
    auto state = plan_interval_search(14, SearchMode::mptq, {});
    auto out = run_search(state, {1, 0, &cancel});
    CHECK_FALSE(out.complete);
    cancel = false;
    out = run_search(state, {1, 0, &cancel});
    CHECK(out.complete);
    auto fresh = plan_interval_search(14, SearchMode::mptq, {});
    run_search(fresh);
    CHECK(state.subsets_examined() == fresh.subsets_examined());
}

TEST_CASE("checkpoint parsing rejects bad input")
{
    auto state = plan_interval_search(6, SearchMode::mptq, {});
    auto j = checkpoint_to_json(state);
    auto bad = j;
    bad["format"] = "other";
    CHECK_THROWS_AS(checkpoint_from_json(bad), InputError);
    bad = j;
    bad["version"] = 99;
    CHECK_THROWS_AS(checkpoint_from_json(bad), InputError);
    bad = j;
    bad.erase("tasks");
    CHECK_THROWS_AS(checkpoint_from_json(bad), InputError);
    CHECK_THROWS_AS(checkpoint_from_json(nlohmann::json::array()), InputError);
}

TEST_CASE("universe planning validation")
{
    SearchUniverse u;
    u.mode = SearchMode::mptq;
    u.multiplicative = {fv(1), fv(6)};
    CHECK_THROWS_AS(plan_universe_search(u, {3}, {}), InputError);
    CHECK_THROWS_AS(plan_universe_search(u, {4}, {}), InputError);
    CHECK_THROWS_AS(plan_universe_search(SearchUniverse{}, {}, {}), InputError);
    SearchUniverse a;
    a.mode = SearchMode::mstd;
    a.additive = {1, 2};
    CHECK_THROWS_AS(plan_universe_search(a, {5}, {}), InputError);
    CHECK_THROWS_AS(parse_search_mode("foo"), InputError);
}

TEST_CASE("expand_with_primes")
{
    // level 0: only the set itself
    auto s4 = s4_set();
    auto r4 = classify(s4);
    CHECK(r4.k_special == 0);
    CHECK(expand_with_primes(s4, 0, {3, 5}) == std::vector<MultiplicativeSet>{s4});
    CHECK_THROWS_AS(expand_with_primes(s4, 1, {3, 5}), InputError);
    CHECK_THROWS_AS(expand_with_primes(s4, 0, {2}), InputError);
    CHECK_THROWS_AS(expand_with_primes(MultiplicativeSet::of({1, 2, 3}), 0, {5}), InputError);

    // A larger member of the base-expansion family has positive level; the
    // level is recomputed here from the raw sizes.
    auto big = mptq_family(s4, {3}).front();
    auto r = classify(big);
    const auto d = static_cast<std::int64_t>(*r.product_size) - static_cast<std::int64_t>(*r.quotient_size);
    const auto n = static_cast<std::int64_t>(big.size());
    std::int64_t level = 0;
    while (d >= (level + 1) * n + (level + 1) * (level - 2) / 2 + 1) ++level;
    REQUIRE(level >= 1);
    CHECK(r.k_special == level);
    const std::vector<Prime> primes{3, 5, 7, 11};
    auto out = expand_with_primes(big, static_cast<std::uint32_t>(level), primes);
    CHECK(out.size() == expansion_count(static_cast<std::uint32_t>(level), primes.size()));

    for (const auto& p : primes) {
        auto adj = adjoin_analysis(big, FactoredNonzero::from_prime(p));
        CHECK(adj.new_products == big.size() + 1);
        CHECK(adj.new_quotients == 2 * big.size());
    }
}

TEST_CASE("prime adjoin law on random subsets of an interval")
{
    const std::uint64_t n = 30;
    const auto excluded = excluded_primes(n);
    std::vector<std::int64_t> pool;
    for (std::int64_t x = 1; x <= static_cast<std::int64_t>(n); ++x) {
        if (std::find(excluded.begin(), excluded.end(), static_cast<Prime>(x)) == excluded.end()) pool.push_back(x);
    }
    std::mt19937_64 rng(42);
    for (int it = 0; it < 2000; ++it) {
        std::vector<FactoredNonzero> v;
        for (auto x : pool) {
            if (rng() & 1u) v.push_back(fv(x));
        }
        if (v.empty()) v.push_back(fv(1));
        MultiplicativeSet a(std::move(v));
        Prime p = excluded[rng() % excluded.size()];
        auto adj = adjoin_analysis(a, FactoredNonzero::from_prime(p));
        CHECK(adj.new_products == a.size() + 1);
        CHECK(adj.new_quotients == 2 * a.size());
    }
}
