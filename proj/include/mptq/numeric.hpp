#pragma once

// Exact nonzero rationals stored as a sign and a prime-exponent map.
//
// Products and quotients reduce to merging two sorted exponent lists, so
// derived sets (A*A, A/A) can be materialized and hashed without ever
// touching a floating point value.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mptq {

using BigInt = boost::multiprecision::cpp_int;
using Prime = std::uint64_t;
using Exponent = std::int64_t;

/// Raised for malformed input and violated preconditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PrimePower {
    Prime prime = 0;
    Exponent exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

bool is_prime(std::uint64_t n);

/// Factor a positive integer by trial division. Throws InputError if a
/// cofactor larger than 64 bits survives trial division.
std::vector<PrimePower> factor(const BigInt& n);
std::vector<PrimePower> factor(std::uint64_t n);

/// The first `count` primes.
std::vector<Prime> first_primes(std::size_t count);

/// All primes p with lo < p <= hi.
std::vector<Prime> primes_in(std::uint64_t lo, std::uint64_t hi);

class FactoredNonzero {
public:
    /// The value 1.
    FactoredNonzero() = default;

    static FactoredNonzero from_integer(std::int64_t value);
    static FactoredNonzero from_prime(Prime p);

    /// Builds sign * prod p^e. Repeated primes are merged and zero exponents
    /// dropped; throws InputError if a key is not prime.
    static FactoredNonzero from_factors(bool negative, std::vector<PrimePower> factors);

    bool negative() const { return negative_; }
    int sign() const { return negative_ ? -1 : 1; }
    std::span<const PrimePower> factors() const { return factors_; }
    Exponent exponent_of(Prime p) const;
    bool is_one() const { return !negative_ && factors_.empty(); }
    bool is_unit() const { return factors_.empty(); }
    bool is_integer() const;

    FactoredNonzero inverse() const;
    FactoredNonzero negated() const;
    FactoredNonzero abs() const;
    FactoredNonzero pow(Exponent k) const;

    /// Magnitude written as numerator / denominator in lowest terms.
    BigInt numerator() const;
    BigInt denominator() const;

    std::optional<std::int64_t> to_int64() const;
    std::string to_string() const;

    std::size_t hash() const;

    friend FactoredNonzero operator*(const FactoredNonzero& a, const FactoredNonzero& b);
    friend FactoredNonzero operator/(const FactoredNonzero& a, const FactoredNonzero& b);
    friend bool operator==(const FactoredNonzero&, const FactoredNonzero&) = default;

private:
    bool negative_ = false;
    std::vector<PrimePower> factors_;  // sorted by prime, no zero exponents
};

/// Parses `[-]digits` or `[-]digits/digits`.
FactoredNonzero parse_number(std::string_view text);

/// Exact comparison of |a| against |b|.
std::strong_ordering abs_compare(const FactoredNonzero& a, const FactoredNonzero& b);

/// Canonical element order: by absolute value, negative first at ties.
std::strong_ordering canonical_compare(const FactoredNonzero& a, const FactoredNonzero& b);

struct CanonicalLess {
    bool operator()(const FactoredNonzero& a, const FactoredNonzero& b) const
    {
        return canonical_compare(a, b) < 0;
    }
};

/// Additive image of a FactoredNonzero: sign bit mod 2 plus exponent
/// coordinates. Multiplication becomes addition.
class ExponentVector {
public:
    ExponentVector() = default;
    ExponentVector(int sign_bit, std::vector<PrimePower> coords);

    int sign_bit() const { return sign_bit_; }
    std::span<const PrimePower> coords() const { return coords_; }
    Exponent coord(Prime p) const;
    bool is_zero() const { return sign_bit_ == 0 && coords_.empty(); }

    ExponentVector operator-() const;
    friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
    friend ExponentVector operator-(const ExponentVector& a, const ExponentVector& b);
    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
    friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b);

    std::size_t hash() const;
    std::string to_string() const;

private:
    int sign_bit_ = 0;
    std::vector<PrimePower> coords_;  // sorted by prime, no zero entries
};

ExponentVector to_log(const FactoredNonzero& a);
FactoredNonzero from_log(const ExponentVector& v);

struct FactoredHash {
    std::size_t operator()(const FactoredNonzero& a) const { return a.hash(); }
};

struct ExponentVectorHash {
    std::size_t operator()(const ExponentVector& v) const { return v.hash(); }
};

}  // namespace mptq
