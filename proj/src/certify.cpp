#include "mptq/certify.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

#include "mptq/search.hpp"
#include "mptq/transforms.hpp"

namespace mptq {

namespace {

std::vector<std::int64_t> fibonacci(std::size_t terms)
{
    std::vector<std::int64_t> f;
    for (std::size_t k = 1; k <= terms; ++k) {
        if (k == 1) f.push_back(1);
        else if (k == 2) f.push_back(2);
        else f.push_back(f[k - 2] + f[k - 3]);
    }
    return f;
}

// MPTQ subsets of `elements` with at most max_size members, via the search kernel.
SearchReport small_subset_scan(const std::vector<FactoredNonzero>& elements, std::size_t max_size)
{
    SearchUniverse u;
    u.mode = SearchMode::mptq;
    u.multiplicative = elements;
    SearchOptions opt;
    opt.max_size = max_size;
    SearchState state = plan_universe_search(std::move(u), {}, opt);
    run_search(state, RunControl{1, 0, nullptr});
    return summarize(state);
}

}  // namespace

std::vector<FactoredNonzero> fibonacci_power_sequence(std::size_t terms)
{
    const auto two = FactoredNonzero::from_integer(2);
    std::vector<FactoredNonzero> out;
    for (auto f : fibonacci(terms)) out.push_back(two.pow(f));
    return out;
}

std::vector<FactoredNonzero> signed_power_sequence(std::size_t terms, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const auto fib = fibonacci(terms);
    std::vector<FactoredNonzero> out;
    for (std::size_t k = 1; k <= terms; ++k) {
        const bool negative = (rng() & 1u) != 0;
        FactoredNonzero a = k == 1 ? FactoredNonzero() : FactoredNonzero::from_integer(static_cast<std::int64_t>(k)).pow(fib[k - 1]);
        out.push_back(negative ? a.negated() : a);
    }
    return out;
}

std::vector<FactoredNonzero> prime_sequence(std::size_t terms)
{
    std::vector<FactoredNonzero> out;
    for (Prime p : first_primes(terms)) out.push_back(FactoredNonzero::from_prime(p));
    return out;
}

SequenceCertificate certify_sequence(const std::vector<FactoredNonzero>& prefix, std::uint32_t r)
{
    if (r == 0) throw InputError("certify_sequence: r must be at least 1");
    if (prefix.empty()) throw InputError("certify_sequence: empty prefix");
    for (std::size_t i = 1; i < prefix.size(); ++i) {
        if (abs_compare(prefix[i - 1], prefix[i]) >= 0) {
            throw InputError("certify_sequence: prefix is not strictly increasing in absolute value at term " +
                             std::to_string(i + 1));
        }
    }

    SequenceCertificate cert;
    cert.prefix = prefix;
    cert.r = r;
    const std::size_t K = prefix.size();
    cert.growth_checked_up_to = K;
    cert.small_subset_bound = 2 * static_cast<std::size_t>(r) - 1;
    cert.sanity_bound = std::min<std::size_t>(K, 2 * static_cast<std::size_t>(r) + 3);

    // Growth condition, 1-based k.
    for (std::size_t k = r + 1; k <= K; ++k) {
        const FactoredNonzero bound = prefix[k - 2] * prefix[k - 1 - r];
        if (abs_compare(prefix[k - 1], bound) <= 0) {
            cert.failing_index = k;
            cert.reason = "growth condition fails at k = " + std::to_string(k);
            return cert;
        }
    }

    const SearchReport small = small_subset_scan(prefix, cert.small_subset_bound);
    cert.subsets_checked += small.subsets_examined;
    if (!small.found.empty()) {
        cert.witness = *small.found.front().multiplicative;
        cert.reason = "MPTQ subset of size " + std::to_string(cert.witness->size()) + " within the small-subset bound";
        return cert;
    }

    const SearchReport sanity = small_subset_scan(prefix, cert.sanity_bound);
    cert.subsets_checked += sanity.subsets_examined;
    if (!sanity.found.empty()) {
        throw std::logic_error("certify_sequence: hypotheses hold but an MPTQ subset exists");
    }
    cert.certified = true;
    cert.reason = "both hypotheses verified";
    return cert;
}

PrimeAuditReport prime_subset_audit(std::size_t count, std::size_t max_size)
{
    if (count == 0) throw InputError("prime_subset_audit: count must be at least 1");
    if (count > 24) throw InputError("prime_subset_audit: count above 24 is not supported");
    const auto primes = prime_sequence(count);

    PrimeAuditReport rep;
    rep.count = count;
    rep.max_size = std::min(max_size, count);
    const std::uint64_t masks = std::uint64_t{1} << count;
    std::uint64_t checked = 0, mptq = 0, steps = 0, failures = 0, lattice = 0, lattice_mstd = 0;

#pragma omp parallel for schedule(dynamic, 64) reduction(+ : checked, mptq, steps, failures, lattice, lattice_mstd)
    for (std::uint64_t mask = 1; mask < masks; ++mask) {
        const auto n = static_cast<std::size_t>(std::popcount(mask));
        if (n > rep.max_size) continue;
        std::vector<FactoredNonzero> v;
        for (std::size_t i = 0; i < count; ++i) {
            if (mask >> i & 1u) v.push_back(primes[i]);
        }
        const MultiplicativeSet set(v);
        ++checked;
        mptq += classify(set).is_mptq();

        ++lattice;
        lattice_mstd += classify(log_free(set)).is_mstd();

        if (n >= 2) {
            const FactoredNonzero top = set.back();
            MultiplicativeSet rest(std::vector<FactoredNonzero>(set.begin(), set.end() - 1));
            const auto step = adjoin_analysis(rest, top);
            ++steps;
            failures += (step.new_quotients < 2 * (n - 1) || step.new_products > n);
        }
    }
    rep.subsets_checked = checked;
    rep.mptq_found = mptq;
    rep.step_checks = steps;
    rep.step_failures = failures;
    rep.lattice_checked = lattice;
    rep.lattice_mstd = lattice_mstd;
    return rep;
}

ExploreReport explore_multiplier_space(std::size_t size, const std::vector<FactoredNonzero>& ratio_candidates,
                                       const FactoredNonzero& head)
{
    if (size == 0) throw InputError("explore_multiplier_space: size must be at least 1");
    const FactoredNonzero one;
    for (const auto& r : ratio_candidates) {
        if (r.is_one() || abs_compare(r, one) < 0) {
            throw InputError("explore_multiplier_space: invalid ratio candidate " + r.to_string());
        }
    }
    const std::size_t c = ratio_candidates.size();
    const std::size_t slots = size - 1;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < slots; ++i) {
        if (c == 0) {
            total = 0;
            break;
        }
        if (total > (std::uint64_t{1} << 40) / c) throw InputError("explore_multiplier_space: search space too large");
        total *= c;
    }

    ExploreReport rep;
    rep.size = size;
    rep.sequences = total;
    std::vector<std::pair<std::uint64_t, MultiplicativeSet>> hits;
    std::uint64_t invalid = 0;

#pragma omp parallel reduction(+ : invalid)
    {
        std::vector<std::pair<std::uint64_t, MultiplicativeSet>> local;
        MultiplierSequence ms;
        ms.head = head;
        ms.ratios.resize(slots);
#pragma omp for schedule(dynamic, 256)
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t rest = idx;
            for (std::size_t s = 0; s < slots; ++s) {
                ms.ratios[s] = ratio_candidates[rest % c];
                rest /= c;
            }
            MultiplicativeSet set;
            try {
                set = from_multiplier_sequence(ms);
            } catch (const InputError&) {
                ++invalid;
                continue;
            }
            if (classify(set).is_mptq()) local.emplace_back(idx, std::move(set));
        }
#pragma omp critical
        hits.insert(hits.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    }
    rep.invalid = invalid;
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [idx, set] : hits) {
        if (std::find(rep.found.begin(), rep.found.end(), set) == rep.found.end()) rep.found.push_back(std::move(set));
    }
    return rep;
}

}  // namespace mptq
