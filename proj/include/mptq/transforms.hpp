#pragma once

// Bridges between the multiplicative and additive worlds, plus the
// structured generators used to build and relabel MPTQ sets.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mptq/numeric.hpp"
#include "mptq/setops.hpp"

namespace mptq {

/// Exponents e with a = r^e for each a in A. Requires r > 0, r != 1 and
/// every element an exact integer power of r.
AdditiveSet log_power(const MultiplicativeSet& a, const FactoredNonzero& r);

/// Exact free-abelian log: each positive element maps to its prime-exponent
/// vector.
LatticeSet log_free(const MultiplicativeSet& a);

/// {r^b : b in B}; inverse of log_power.
MultiplicativeSet exp_power(const AdditiveSet& b, const FactoredNonzero& r);

/// Rewrites every power of p as the same power of q.
MultiplicativeSet prime_switch(const MultiplicativeSet& a, Prime p, Prime q);

/// G_{n,r} = {1, r, ..., r^(n-1)}.
MultiplicativeSet geometric_set(std::size_t n, const FactoredNonzero& r);

/// 2 * diameter + 1: large enough that sums and differences of digit
/// vectors decode uniquely.
std::int64_t safe_base(const AdditiveSet& a);

/// A_{k,m} = { sum_i a_i m^(i-1) : a_i in A } after translating A to min 0.
AdditiveSet base_expansion(const AdditiveSet& a, std::size_t k, std::int64_t m);

/// log_2 -> base_expansion(k, safe_base) -> 2^(.) for each k, in k order.
std::vector<MultiplicativeSet> mptq_family(const MultiplicativeSet& a, const std::vector<std::size_t>& k_values);

}  // namespace mptq
