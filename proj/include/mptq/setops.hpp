#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mptq/numeric.hpp"

namespace mptq {

/// Finite duplicate-free set of nonzero rationals kept in canonical order
/// (ascending absolute value, negative first at ties).
class MultiplicativeSet {
public:
    MultiplicativeSet() = default;
    explicit MultiplicativeSet(std::vector<FactoredNonzero> elements);

    static MultiplicativeSet of(std::initializer_list<std::int64_t> values);
    static MultiplicativeSet parse(const std::vector<std::string>& literals);

    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    const std::vector<FactoredNonzero>& elements() const { return elements_; }
    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }
    const FactoredNonzero& operator[](std::size_t i) const { return elements_[i]; }
    const FactoredNonzero& front() const { return elements_.front(); }
    const FactoredNonzero& back() const { return elements_.back(); }

    bool contains(const FactoredNonzero& x) const;
    /// Returns false if x was already present.
    bool insert(const FactoredNonzero& x);
    MultiplicativeSet with(const FactoredNonzero& x) const;
    MultiplicativeSet scaled(const FactoredNonzero& c) const;

    std::vector<std::string> to_strings() const;

    friend bool operator==(const MultiplicativeSet&, const MultiplicativeSet&) = default;

private:
    std::vector<FactoredNonzero> elements_;
};

/// Finite duplicate-free set of integers, sorted ascending.
class AdditiveSet {
public:
    AdditiveSet() = default;
    explicit AdditiveSet(std::vector<std::int64_t> elements);
    AdditiveSet(std::initializer_list<std::int64_t> values);

    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    const std::vector<std::int64_t>& elements() const { return elements_; }
    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }
    std::int64_t min() const { return elements_.front(); }
    std::int64_t max() const { return elements_.back(); }
    bool contains(std::int64_t x) const;

    friend bool operator==(const AdditiveSet&, const AdditiveSet&) = default;

private:
    std::vector<std::int64_t> elements_;
};

/// Additive set in the free abelian group of exponent vectors.
class LatticeSet {
public:
    LatticeSet() = default;
    explicit LatticeSet(std::vector<ExponentVector> elements);

    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    const std::vector<ExponentVector>& elements() const { return elements_; }
    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }

    friend bool operator==(const LatticeSet&, const LatticeSet&) = default;

private:
    std::vector<ExponentVector> elements_;
};

enum class Mode { multiplicative, additive };

enum class Verdict { mptq, quotient_dominated, mstd, difference_dominated, balanced };

std::string_view verdict_name(Verdict v);
std::string_view mode_name(Mode m);

struct ClassificationReport {
    Mode mode = Mode::multiplicative;
    std::size_t size = 0;
    std::optional<std::size_t> product_size;
    std::optional<std::size_t> quotient_size;
    std::optional<std::size_t> sum_size;
    std::optional<std::size_t> difference_size;
    Verdict verdict = Verdict::balanced;
    std::uint32_t k_special = 0;

    bool is_mptq() const { return verdict == Verdict::mptq; }
    bool is_mstd() const { return verdict == Verdict::mstd; }
};

MultiplicativeSet product_set(const MultiplicativeSet& a);
MultiplicativeSet quotient_set(const MultiplicativeSet& a);
AdditiveSet sum_set(const AdditiveSet& b);
AdditiveSet difference_set(const AdditiveSet& b);
LatticeSet sum_set(const LatticeSet& b);
LatticeSet difference_set(const LatticeSet& b);

ClassificationReport classify(const MultiplicativeSet& a);
ClassificationReport classify(const AdditiveSet& b);
ClassificationReport classify(const LatticeSet& b);

/// Builds a report from already-known sizes; shared with the fast counting
/// paths so their verdict logic cannot drift from classify().
ClassificationReport multiplicative_report(std::size_t size, std::size_t products, std::size_t quotients);
ClassificationReport additive_report(std::size_t size, std::size_t sums, std::size_t differences);

/// Largest k >= 1 with  products - quotients >= k*n + k(k-3)/2 + 1, or 0.
std::uint32_t k_special_level(std::size_t product_size, std::size_t quotient_size, std::size_t set_size);

/// Sizes of A*A and A/A after adjoining `t` primes that divide no element,
/// following the exact per-prime increments (|S|+i new products, 2(|S|+i)
/// new quotients for the i-th prime).
std::pair<std::size_t, std::size_t> sizes_after_prime_adjoin(std::size_t product_size, std::size_t quotient_size,
                                                             std::size_t set_size, std::size_t t);

using ElementPair = std::pair<FactoredNonzero, FactoredNonzero>;

struct MultiplicityEntry {
    FactoredNonzero value;
    std::vector<ElementPair> pairs;  // unordered pairs {x, y}
};

/// (A/A)_q for every q: unordered pairs {a_i, a_j} with a_i / a_j = q,
/// listed numerator first. Sorted by q in canonical order.
std::vector<MultiplicityEntry> quotient_multiplicity(const MultiplicativeSet& a);

/// (A*A)_p for every p: unordered pairs {a_i, a_j} (i <= j) with product p.
std::vector<MultiplicityEntry> product_multiplicity(const MultiplicativeSet& a);

/// Both sides of an equal-pair counting identity, stored doubled so the
/// half-integer q = -1 contribution stays exact.
struct IdentitySides {
    std::int64_t lhs_doubled = 0;
    std::int64_t rhs_doubled = 0;

    double lhs() const { return static_cast<double>(lhs_doubled) / 2.0; }
    double rhs() const { return static_cast<double>(rhs_doubled) / 2.0; }
    bool holds() const { return lhs_doubled == rhs_doubled; }
};

/// (n(n-1)+1-|A/A|)/2  versus  sum over q != 1, |q| >= 1 of (|(A/A)_q| - 1).
/// The q = -1 class pairs each {a,-a} with itself, so it enters as
/// |(A/A)_{-1}| - 1/2.
IdentitySides quotient_identity(const MultiplicativeSet& a);

/// n(n+1)/2 - |A*A|  versus  sum over p of (|(A*A)_p| - 1).
IdentitySides product_identity(const MultiplicativeSet& a);

struct TrivialBounds {
    std::uint64_t max_products = 0;
    std::uint64_t max_quotients = 0;
};

TrivialBounds trivial_bounds(std::size_t set_size);

struct AdjoinAnalysis {
    std::size_t new_products = 0;
    std::size_t new_quotients = 0;
    std::vector<FactoredNonzero> products;   // the new products, canonical order
    std::vector<FactoredNonzero> quotients;  // the new quotients, canonical order
};

/// Counts elements of (A u {x})*(A u {x}) and (A u {x})/(A u {x}) missing
/// from A*A and A/A. Throws InputError if x is already in A.
AdjoinAnalysis adjoin_analysis(const MultiplicativeSet& a, const FactoredNonzero& x);

/// Some c with c / A = A, if one exists.
std::optional<FactoredNonzero> symmetry_witness(const MultiplicativeSet& a);

struct MultiplierSequence {
    FactoredNonzero head;
    std::vector<FactoredNonzero> ratios;

    friend bool operator==(const MultiplierSequence&, const MultiplierSequence&) = default;
};

MultiplierSequence to_multiplier_sequence(const MultiplicativeSet& a);
MultiplicativeSet from_multiplier_sequence(const MultiplierSequence& ms);
std::string to_string(const MultiplierSequence& ms);

/// A = {a, ar, ..., ar^(n-1), b}: such a set is never MPTQ.
struct GeometricCertificate {
    FactoredNonzero a;
    FactoredNonzero r;
    std::size_t n = 0;
    FactoredNonzero b;
};

std::optional<GeometricCertificate> geometric_plus_one_certificate(const MultiplicativeSet& a);

}  // namespace mptq
