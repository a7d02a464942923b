#pragma once

// Certificates that whole sequences (or the primes) contain no MPTQ
// subsets, and the exhaustive multiplier-sequence probe for small sizes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mptq/numeric.hpp"
#include "mptq/setops.hpp"

namespace mptq {

/// a_k = 2^{F_k} with F_1 = 1, F_2 = 2.
std::vector<FactoredNonzero> fibonacci_power_sequence(std::size_t terms);

/// a_k = +-k^{F_k}; signs drawn from `seed`.
std::vector<FactoredNonzero> signed_power_sequence(std::size_t terms, std::uint64_t seed);

/// The first `terms` primes as elements.
std::vector<FactoredNonzero> prime_sequence(std::size_t terms);

struct SequenceCertificate {
    std::vector<FactoredNonzero> prefix;
    std::uint32_t r = 1;
    std::size_t growth_checked_up_to = 0;  // K
    std::size_t small_subset_bound = 0;    // 2r - 1
    std::size_t sanity_bound = 0;          // min(K, 2r + 3)
    std::uint64_t subsets_checked = 0;
    bool certified = false;
    std::optional<std::size_t> failing_index;  // 1-based k where growth fails
    std::optional<MultiplicativeSet> witness;  // MPTQ subset of size <= 2r - 1
    std::string reason;
};

/// Checks |a_k| > |a_{k-1} a_{k-r}| for r+1 <= k <= K, then classifies every
/// subset of size <= 2r-1. A certified prefix is additionally brute-forced
/// up to size min(K, 2r+3); an MPTQ find there throws std::logic_error.
SequenceCertificate certify_sequence(const std::vector<FactoredNonzero>& prefix, std::uint32_t r);

struct PrimeAuditReport {
    std::size_t count = 0;
    std::size_t max_size = 0;
    std::uint64_t subsets_checked = 0;
    std::uint64_t mptq_found = 0;
    std::uint64_t step_checks = 0;    // subsets of size >= 2 whose top prime was re-adjoined
    std::uint64_t step_failures = 0;  // adjoin gave < 2(n-1) quotients or > n products
    std::uint64_t lattice_checked = 0;
    std::uint64_t lattice_mstd = 0;   // exponent-vector images that are MSTD
};

/// Every subset of the first `count` primes with at most `max_size`
/// elements: classification, the largest-prime adjoin step, and the
/// exponent-vector (standard basis) cross-check.
PrimeAuditReport prime_subset_audit(std::size_t count, std::size_t max_size);

struct ExploreReport {
    std::size_t size = 0;
    std::uint64_t sequences = 0;  // candidate sequences enumerated
    std::uint64_t invalid = 0;    // decoded to repeated elements
    std::vector<MultiplicativeSet> found;
};

/// Decodes every multiplier sequence (head | r_1..r_{size-1}) with ratios
/// drawn from `ratio_candidates` and returns the distinct MPTQ sets.
ExploreReport explore_multiplier_space(std::size_t size, const std::vector<FactoredNonzero>& ratio_candidates,
                                       const FactoredNonzero& head);

}  // namespace mptq
