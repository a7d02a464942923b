// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "mptq/certify.hpp"
#include "mptq/pair_table.hpp"
#include "mptq/reference.hpp"
#include "mptq/sampling.hpp"
#include "mptq/search.hpp"
#include "mptq/setops.hpp"
#include "mptq/transforms.hpp"

using namespace mptq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

FactoredNonzero fv(std::int64_t v) { return FactoredNonzero::from_integer(v); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

const AdditiveSet kConway{0, 2, 3, 4, 7, 11, 12, 14};

MultiplicativeSet s4_literal()
{
    return MultiplicativeSet::of({1, 4, 8, 16, 128, 2048, 4096, 16384});
}

// 1
void conway(Outcome& o)
{
    auto r = classify(kConway);
    double best = 1e9;
    for (int i = 0; i < 20; ++i) {
        auto t0 = Clock::now();
        auto again = classify(kConway);
        best = std::min(best, seconds_since(t0));
        o.require(again.sum_size == r.sum_size, "repeatable");
    }
    o.require(r.sum_size == 26, "|A+A| = 26");
    o.require(r.difference_size == 25, "|A-A| = 25");
    o.require(r.verdict == Verdict::mstd, "verdict MSTD");
    o.require(best < 1e-3, "under 1 ms");
    o.detail << "|A+A|=" << *r.sum_size << " |A-A|=" << *r.difference_size << " verdict="
             << verdict_name(r.verdict) << " time=" << best * 1e6 << "us";
}

// 2
void worked_example(Outcome& o)
{
    auto a = MultiplicativeSet::of({1, 2, 3, 6, 9});
    auto r = classify(a);
    auto qi = quotient_identity(a);
    auto pi = product_identity(a);
    o.require(r.product_size == 12, "|A*A| = 12");
    o.require(r.quotient_size == 13, "|A/A| = 13");
    o.require(qi.lhs_doubled == 8 && qi.rhs_doubled == 8, "quotient identity sides 4 = 4");
    o.require(pi.lhs_doubled == 6 && pi.rhs_doubled == 6, "product identity sides 3 = 3");
    o.detail << "|A*A|=" << *r.product_size << " |A/A|=" << *r.quotient_size << " quotient identity " << qi.lhs()
             << "=" << qi.rhs() << " product identity " << pi.lhs() << "=" << pi.rhs();
}

// 3
void grid_and_switch(Outcome& o)
{
    const std::vector<MultiplicativeSet> grid{
        MultiplicativeSet::of({12, 27, 36, 96, 108, 144, 162, 243, 648, 864, 1944}),
        MultiplicativeSet::of({8, 18, 32, 36, 48, 216, 324, 432, 486, 864, 1944}),
        MultiplicativeSet::of({4, 9, 12, 32, 36, 48, 54, 81, 216, 288, 648}),
        MultiplicativeSet::of({1, 6, 8, 9, 24, 72, 108, 288, 324, 432, 2592}),
        MultiplicativeSet::of({3, 18, 24, 27, 72, 108, 324, 864, 972, 1296, 7776}),
    };
    int mptq = 0;
    for (const auto& g : grid) {
        auto r = classify(g);
        mptq += r.is_mptq();
        o.detail << *r.product_size << "/" << *r.quotient_size << " ";
    }
    o.require(mptq == 5, "all five grid sets MPTQ");
    auto s2 = MultiplicativeSet::of({3, 4, 6, 8, 9, 27, 48, 72, 144, 162, 216, 324, 432});
    auto s3 = MultiplicativeSet::of({3, 25, 15, 125, 9, 27, 1875, 1125, 5625, 405, 3375, 2025, 16875});
    auto switched = prime_switch(s2, 2, 5);
    o.require(switched == s3, "(2,5) switch of S_2 equals S_3");
    auto r3 = classify(switched);
    o.require(r3.is_mptq(), "S_3 MPTQ");
    o.detail << "grid MPTQ " << mptq << "/5; S_3 " << *r3.product_size << "/" << *r3.quotient_size;
}

// 4
void s4(Outcome& o)
{
    auto s = s4_literal();
    auto r = classify(s);
    o.require(r.is_mptq(), "S_4 MPTQ");
    o.require(exp_power(kConway, fv(2)) == s, "2^Conway = S_4");
    o.require(log_power(s, fv(2)) == kConway, "log_2 S_4 = Conway");
    o.detail << "|S4*S4|=" << *r.product_size << " |S4/S4|=" << *r.quotient_size;
}

// 5
void interval_30(Outcome& o)
{
    auto t0 = Clock::now();
    SearchOptions opt;
    opt.parallel_width = 12;
    auto rep = exhaustive_search(30, SearchMode::mptq, opt);
    const double t = seconds_since(t0);
    o.require(rep.complete, "complete");
    o.require(rep.subsets_examined == (std::uint64_t{1} << rep.reduced_universe_size), "all subsets visited");
    o.require(rep.excluded_primes == std::vector<Prime>{17, 19, 23, 29}, "excluded primes");
    o.require(rep.found_count == 0 && rep.expanded_total == 0, "expanded_total = 0");
    o.require(t < 15 * 60, "under 15 minutes");
    o.detail << "subsets=" << rep.subsets_examined << " expanded_total=" << rep.expanded_total << " time=" << t
             << "s threads=" << omp_get_max_threads();
}

// 6
void mstd_search(Outcome& o)
{
    auto t0 = Clock::now();
    auto rep = exhaustive_search(15, SearchMode::mstd, {});
    o.require(rep.complete && rep.found_count >= 1, "MSTD subset of {1..15} found");
    bool verified = true;
    for (const auto& f : rep.found) verified = verified && classify(*f.additive).is_mstd();
    o.require(verified, "finds re-verify");

    SearchUniverse u;
    u.mode = SearchMode::mstd;
    for (std::int64_t x = 0; x <= 14; ++x) u.additive.push_back(x);
    SearchOptions small;
    small.max_size = 7;
    auto state = plan_universe_search(u, {}, small);
    run_search(state);
    auto capped = summarize(state);
    const double t = seconds_since(t0);
    o.require(capped.complete && capped.found_count == 0, "no MSTD subset of {0..14} below 8 elements");
    o.require(t < 60, "under 1 minute");
    o.detail << "{1..15}: " << rep.found_count << " MSTD subsets; {0..14} size<=7: " << capped.subsets_examined
             << " subsets, " << capped.found_count << " MSTD; time=" << t << "s";
}

// 7
void prime_adjoin_law(Outcome& o)
{
    std::mt19937_64 rng(1202);
    std::uint64_t checked = 0, exceptions = 0;
    for (int it = 0; it < 10000; ++it) {
        const std::uint64_t n = 10 + rng() % 27;  // 10..36
        const auto excluded = excluded_primes(n);
        std::vector<FactoredNonzero> v;
        for (std::uint64_t x = 1; x <= n; ++x) {
            if (std::find(excluded.begin(), excluded.end(), x) != excluded.end()) continue;
            if (rng() & 1u) v.push_back(fv(static_cast<std::int64_t>(x)));
        }
        if (v.empty()) v.push_back(fv(1));
        MultiplicativeSet a(std::move(v));
        const Prime p = excluded[rng() % excluded.size()];
        auto adj = adjoin_analysis(a, FactoredNonzero::from_prime(p));
        ++checked;
        exceptions += adj.new_products != a.size() + 1 || adj.new_quotients != 2 * a.size();
    }
    o.require(exceptions == 0, "zero exceptions");
    o.detail << checked << " samples, " << exceptions << " exceptions";
}

// 8
void geometric_far_power(Outcome& o)
{
    const std::vector<FactoredNonzero> ratios{fv(2), fv(-2), fv(3), fv(-3), parse_number("3/2"), parse_number("5/2")};
    std::uint64_t cases = 0, bad = 0;
    for (std::size_t n = 1; n <= 8; ++n) {
        for (const auto& r : ratios) {
            auto g = geometric_set(n, r);
            for (std::size_t k = 1; k + 1 <= n; ++k) {
                auto adj = adjoin_analysis(g, r.pow(static_cast<Exponent>(n - 1 + k)));
                ++cases;
                bad += adj.new_products != k + 1 || adj.new_quotients != 2 * k;
            }
        }
    }
    o.require(bad == 0, "(k+1, 2k) in every case");
    o.detail << cases << " cases, " << bad << " mismatches";
}

// 9
void property_suite(Outcome& o)
{
    std::mt19937_64 rng(31337);
    static const std::int64_t nums[] = {1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 18, 20, 24, 27, 30, 36};
    std::uint64_t bounds = 0, qid = 0, pid = 0, sym_balanced = 0, sym_total = 0;
    const int trials = 10000;
    for (int it = 0; it < trials; ++it) {
        const std::size_t size = 1 + rng() % 10;
        std::vector<FactoredNonzero> v;
        while (v.size() < size) {
            auto x = fv(nums[rng() % std::size(nums)]) / fv(1 + static_cast<std::int64_t>(rng() % 4));
            if (rng() % 3 == 0) x = x.negated();
            if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
        }
        MultiplicativeSet a(std::move(v));
        auto r = classify(a);
        auto tb = trivial_bounds(a.size());
        bounds += *r.product_size <= tb.max_products && *r.quotient_size <= tb.max_quotients;
        qid += quotient_identity(a).holds();
        pid += product_identity(a).holds();

        auto c = fv(1 + static_cast<std::int64_t>(rng() % 40)) / fv(1 + static_cast<std::int64_t>(rng() % 5));
        if (rng() & 1u) c = c.negated();
        std::vector<FactoredNonzero> w(a.begin(), a.end());
        for (const auto& x : a) w.push_back(c / x);
        MultiplicativeSet s(std::move(w));
        ++sym_total;
        sym_balanced += classify(s).verdict == Verdict::balanced;
    }
    o.require(bounds == trials, "trivial bounds");
    o.require(qid == trials, "quotient identity");
    o.require(pid == trials, "product identity");
    o.require(sym_balanced == sym_total, "c/A u A balanced");
    o.detail << "bounds " << bounds << "/" << trials << ", identities " << qid << "/" << pid << ", symmetric balanced "
             << sym_balanced << "/" << sym_total;
}

// 10
void minimal_cardinality(Outcome& o)
{
    std::vector<FactoredNonzero> mixed{fv(-1)};
    for (const char* r : {"2", "3", "4", "5", "6", "8", "3/2", "5/2", "4/3", "9/4"}) {
        mixed.push_back(parse_number(r));
        mixed.push_back(parse_number(r).negated());
    }
    const std::vector<FactoredNonzero> positive{fv(2), fv(3), fv(4), fv(5), fv(6), fv(8), parse_number("3/2"),
                                                parse_number("5/2"), parse_number("4/3"), parse_number("5/3"),
                                                parse_number("9/4")};
    auto t0 = Clock::now();
    std::uint64_t mixed_seq = 0, mixed_found = 0;
    for (std::size_t size = 1; size <= 4; ++size) {
        auto rep = explore_multiplier_space(size, mixed, fv(1));
        mixed_seq += rep.sequences;
        mixed_found += rep.found.size();
    }
    const double t_mixed = seconds_since(t0);
    t0 = Clock::now();
    std::uint64_t pos_seq = 0, pos_found = 0;
    for (std::size_t size = 1; size <= 7; ++size) {
        auto rep = explore_multiplier_space(size, positive, fv(1));
        pos_seq += rep.sequences;
        pos_found += rep.found.size();
    }
    const double t_pos = seconds_since(t0);
    o.require(mixed_found == 0, "no mixed-sign MPTQ set of size <= 4");
    o.require(pos_found == 0, "no positive MPTQ set of size <= 7");
    o.require(t_mixed < 600 && t_pos < 600, "each probe under 10 minutes");
    o.require(classify(s4_literal()).is_mptq(), "S_4 (size 8) MPTQ");
    o.detail << "mixed: " << mixed_seq << " sequences, " << mixed_found << " MPTQ (" << t_mixed << "s); positive: "
             << pos_seq << " sequences, " << pos_found << " MPTQ (" << t_pos << "s)";
}

// 11
void prime_audit(Outcome& o)
{
    auto rep = prime_subset_audit(12, 12);
    o.require(rep.subsets_checked == 4095, "all 4095 nonempty subsets (4096 with the empty set)");
    o.require(rep.mptq_found == 0, "zero MPTQ");
    o.require(rep.step_failures == 0, "adjoin step bound");
    o.require(rep.lattice_checked == 4095 && rep.lattice_mstd == 0, "standard-basis vector sets never MSTD");
    o.detail << rep.subsets_checked << " nonempty subsets, " << rep.mptq_found << " MPTQ, " << rep.step_failures
             << " step failures, " << rep.lattice_mstd << " MSTD lattice images";
}

// 12
void sequence_certificates(Outcome& o)
{
    auto fib = fibonacci_power_sequence(12);
    auto signs = signed_power_sequence(10, 1);
    auto c1 = certify_sequence(fib, 3);
    auto c2 = certify_sequence(signs, 2);
    o.require(c1.certified, "fib2 r=3 certified");
    o.require(c2.certified, "signed powers r=2 certified");
    std::uint64_t examined = 0, found = 0;
    for (const auto* seq : {&fib, &signs}) {
        auto table = multiplicative_pair_table(*seq);
        auto r = reference::dfs_search(table, 1, 7);
        examined += r.examined;
        found += r.found.size();
    }
    o.require(found == 0, "no MPTQ subset of size <= 7");
    o.detail << "fib2 " << (c1.certified ? "certified" : "violated") << ", signed-powers "
             << (c2.certified ? "certified" : "violated") << "; brute force " << examined << " subsets, " << found
             << " MPTQ";
}

// 13
void base_expansion_law(Outcome& o)
{
    auto e = base_expansion(kConway, 2, 29);
    std::set<std::int64_t> sums, diffs;
    for (auto x : e) {
        for (auto y : e) {
            sums.insert(x + y);
            diffs.insert(x - y);
        }
    }
    o.require(e.size() == 64 && sums.size() == 676 && diffs.size() == 625, "64 / 676 / 625");
    auto fam = mptq_family(s4_literal(), {2});
    auto r = classify(fam.at(0));
    o.require(fam.at(0).size() == 64 && r.is_mptq(), "family k=2 MPTQ with 64 elements");
    o.detail << e.size() << "/" << sums.size() << "/" << diffs.size() << "; family k=2: " << fam.at(0).size()
             << " elements, " << *r.product_size << "/" << *r.quotient_size;
}

// 14
void density(Outcome& o)
{
    auto a = density_estimate(36, 10000, 36);
    auto b = density_estimate(60, 100000, 60);
    auto b1 = density_estimate(60, 100000, 60, 1);
    o.require(a.mptq_hits == 0, "n=36 zero MPTQ hits");
    o.require(b.mstd_hits > 0, "n=60 MSTD hits > 0");
    o.require(b.mptq_hits <= b.mstd_hits, "MPTQ hits <= MSTD hits");
    o.require(b == b1 && a == density_estimate(36, 10000, 36), "seed-deterministic");
    o.detail << "n=36: " << a.mptq_hits << "/" << a.samples << " MPTQ; n=60: " << b.mptq_hits << " MPTQ, "
             << b.mstd_hits << " MSTD of " << b.samples;
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"Conway set classifies MSTD with 26/25", conway},
        {"{1,2,3,6,9} sizes and counting identities", worked_example},
        {"grid sets MPTQ; (2,5) switch of S_2 is S_3", grid_and_switch},
        {"S_4 MPTQ and round-trips to Conway", s4},
        {"exhaustive search N=30 finds nothing", interval_30},
        {"MSTD search N=15 and minimality below 8", mstd_search},
        {"excluded-prime adjoin law on 10^4 samples", prime_adjoin_law},
        {"geometric set far-power adjoin law", geometric_far_power},
        {"bounds, identities and symmetric sets on 10^4 sets", property_suite},
        {"minimal-cardinality multiplier probes", minimal_cardinality},
        {"first 12 primes: audit and lattice check", prime_audit},
        {"sequence certificates", sequence_certificates},
        {"base expansion sizes and family", base_expansion_law},
        {"density estimates", density},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        failures += !o.pass;
        std::printf("%s %2zu  %s  (%s) [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.str().c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
