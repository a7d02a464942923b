#pragma once

// Dense pair tables for a fixed universe u_0..u_{m-1}.
//
// Every value u_i * u_j (or u_i + u_j) and every u_i / u_j (or u_i - u_j)
// is assigned a small integer class id once, by hashing the exact values.
// After that, the size of a derived set is just the number of distinct ids
// touched by the member pairs, which the search kernels maintain with flat
// counter arrays instead of hash sets.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mptq/numeric.hpp"

namespace mptq {

struct PairTable {
    std::size_t size = 0;                 // universe size m
    std::vector<std::uint32_t> sym;       // m*m, class of u_i (*) u_j, symmetric
    std::vector<std::uint32_t> anti;      // m*m, class of u_i (/) u_j
    std::vector<std::uint32_t> anti_t;    // transpose of anti
    std::uint32_t sym_classes = 0;
    std::uint32_t anti_classes = 0;

    std::uint32_t sym_id(std::size_t i, std::size_t j) const { return sym[i * size + j]; }
    std::uint32_t anti_id(std::size_t i, std::size_t j) const { return anti[i * size + j]; }
};

/// Products and quotients of nonzero rationals.
PairTable multiplicative_pair_table(std::span<const FactoredNonzero> universe);

/// Sums and differences of integers.
PairTable additive_pair_table(std::span<const std::int64_t> universe);

/// Incrementally maintained derived-set sizes for a subset of the universe.
/// Elements are added one at a time and removed in LIFO order; each step
/// costs O(current size) counter updates.
class PairCounters {
public:
    explicit PairCounters(const PairTable& table);

    void add(std::uint32_t i);
    void remove_last();

    std::size_t size() const { return members_.size(); }
    std::span<const std::uint32_t> members() const { return members_; }
    std::uint32_t sym_size() const { return sym_distinct_; }
    std::uint32_t anti_size() const { return anti_distinct_; }

private:
    const PairTable* table_;
    std::vector<std::uint32_t> sym_count_;
    std::vector<std::uint32_t> anti_count_;
    std::vector<std::uint32_t> members_;
    std::uint32_t sym_distinct_ = 0;
    std::uint32_t anti_distinct_ = 0;
};

/// One-shot distinct counting for arbitrary subsets, using generation stamps
/// so no clearing is needed between calls.
class DistinctCounter {
public:
    explicit DistinctCounter(const PairTable& table);

    /// (|sym set|, |anti set|) for the given member indices.
    std::pair<std::uint32_t, std::uint32_t> count(std::span<const std::uint32_t> members);

private:
    const PairTable* table_;
    std::vector<std::uint32_t> sym_stamp_;
    std::vector<std::uint32_t> anti_stamp_;
    std::uint32_t generation_ = 0;
};

}  // namespace mptq
