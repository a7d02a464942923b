#pragma once

// Prime-pruned exhaustive search for MPTQ (or MSTD) subsets.
//
// For the interval {1..N}, every prime p with 2p > N divides no other
// element, so adjoining it to any A adds exactly |A|+1 products and 2|A|
// quotients. The search therefore enumerates only the reduced universe
// without those primes and accounts for the re-inserted primes through
// each found set's k-special level.
//
// The enumeration is a depth-first walk in lexicographic subset order with
// incremental pair counters. Work is split into 2^w tasks by fixing the
// membership of the first w universe elements; tasks run as an OpenMP
// dynamic loop and can be stopped and resumed from their current DFS path.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "mptq/numeric.hpp"
#include "mptq/setops.hpp"

namespace mptq {

enum class SearchMode { mptq, mstd };

std::string_view search_mode_name(SearchMode mode);
SearchMode parse_search_mode(std::string_view text);

/// Primes p with n/2 < p <= n.
std::vector<Prime> excluded_primes(std::uint64_t n);

struct SearchOptions {
    std::size_t min_size = 1;
    std::size_t max_size = std::numeric_limits<std::size_t>::max();
    unsigned parallel_width = 0;
    bool report_all = true;
    std::size_t report_limit = 10000;  // applies when report_all is false
    /// Cross-check the counters against classify() on every n-th visited
    /// subset (0 disables). Mismatch throws std::logic_error.
    std::uint64_t verify_every = 0;
};

struct SearchUniverse {
    SearchMode mode = SearchMode::mptq;
    std::vector<FactoredNonzero> multiplicative;  // used in mptq mode
    std::vector<std::int64_t> additive;           // used in mstd mode

    std::size_t size() const { return mode == SearchMode::mptq ? multiplicative.size() : additive.size(); }
};

struct FoundSet {
    std::vector<std::uint32_t> indices;  // into the reduced universe
    std::uint32_t dominant_size = 0;     // |A*A| or |A+A|
    std::uint32_t other_size = 0;        // |A/A| or |A-A|
    std::uint32_t k_special = 0;
    std::uint64_t expansions = 1;        // sets obtained by prime re-insertion, itself included
};

enum class TaskStatus { pending, partial, done };

struct SearchTask {
    std::uint64_t prefix = 0;             // membership bits of the first w elements
    TaskStatus status = TaskStatus::pending;
    std::vector<std::uint32_t> path;      // last visited suffix subset when partial
    std::uint64_t examined = 0;
    std::uint64_t found_count = 0;
    std::uint64_t expanded = 0;
    std::vector<FoundSet> found;
};

/// Everything needed to continue a search; serialized as the checkpoint.
struct SearchState {
    static constexpr int kVersion = 1;

    SearchUniverse universe;            // reduced universe
    std::uint64_t universe_max = 0;     // N for interval searches, 0 otherwise
    std::vector<Prime> excluded;
    SearchOptions options;
    unsigned width = 0;
    std::vector<SearchTask> tasks;
    double elapsed_seconds = 0;

    bool complete() const;
    std::uint64_t subsets_examined() const;
};

SearchState plan_interval_search(std::uint64_t n, SearchMode mode, const SearchOptions& options = {});

/// Search an arbitrary universe. `excluded` lists primes that were removed
/// from it; they must divide no universe element (mptq mode only).
SearchState plan_universe_search(SearchUniverse universe, std::vector<Prime> excluded,
                                 const SearchOptions& options = {});

struct RunControl {
    unsigned threads = 0;                        // 0: OpenMP default
    std::uint64_t budget = 0;                    // subsets this run, 0 = unlimited
    const std::atomic<bool>* cancel = nullptr;   // polled by workers
};

struct RunOutcome {
    bool complete = false;
    std::uint64_t examined = 0;
};

RunOutcome run_search(SearchState& state, const RunControl& control = {});

struct ReportedSet {
    std::optional<MultiplicativeSet> multiplicative;
    std::optional<AdditiveSet> additive;
    ClassificationReport report;
    std::uint64_t expansions = 1;
};

struct SearchReport {
    SearchMode mode = SearchMode::mptq;
    std::uint64_t universe_max = 0;
    std::vector<Prime> excluded_primes;
    std::size_t reduced_universe_size = 0;
    std::uint64_t subsets_examined = 0;
    std::uint64_t found_count = 0;
    std::vector<ReportedSet> found;  // lexicographic by universe index
    std::uint64_t expanded_total = 0;
    double wall_time_seconds = 0;
    bool complete = false;
};

SearchReport summarize(const SearchState& state);

SearchReport exhaustive_search(std::uint64_t n, SearchMode mode, const SearchOptions& options = {},
                               const RunControl& control = {});

/// All S u T with T a subset of `primes`, |T| <= level, in order of |T| then
/// lexicographic. Every output is re-verified MPTQ and every |T| = level+1
/// extension is re-verified not MPTQ; a failure throws std::logic_error.
std::vector<MultiplicativeSet> expand_with_primes(const MultiplicativeSet& s, std::uint32_t level,
                                                  const std::vector<Prime>& primes);

/// sum_{t=0}^{min(level, e)} C(e, t)
std::uint64_t expansion_count(std::uint32_t level, std::size_t excluded_count);

nlohmann::json checkpoint_to_json(const SearchState& state);
SearchState checkpoint_from_json(const nlohmann::json& j);

}  // namespace mptq
