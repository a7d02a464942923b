#include "mptq/transforms.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <string>

namespace mptq {

namespace {

void require_admissible_base(const FactoredNonzero& r, bool positive)
{
    if (r.is_unit()) throw InputError("base must not be 1 or -1");
    if (positive && r.negative()) throw InputError("base must be positive");
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("base expansion overflows 64 bits");
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("base expansion overflows 64 bits");
    return out;
}

}  // namespace

AdditiveSet log_power(const MultiplicativeSet& a, const FactoredNonzero& r)
{
    require_admissible_base(r, true);
    const PrimePower lead = r.factors().front();
    std::vector<std::int64_t> out;
    out.reserve(a.size());
    for (const auto& x : a) {
        if (x.negative()) throw InputError("log_power: negative element " + x.to_string());
        const Exponent e = x.exponent_of(lead.prime);
        if (e % lead.exponent != 0 || r.pow(e / lead.exponent) != x) {
            throw InputError("log_power: " + x.to_string() + " is not an integer power of " + r.to_string());
        }
        out.push_back(e / lead.exponent);
    }
    return AdditiveSet(std::move(out));
}

LatticeSet log_free(const MultiplicativeSet& a)
{
    std::vector<ExponentVector> out;
    out.reserve(a.size());
    for (const auto& x : a) {
        if (x.negative()) throw InputError("log_free: negative element " + x.to_string());
        out.push_back(to_log(x));
    }
    return LatticeSet(std::move(out));
}

MultiplicativeSet exp_power(const AdditiveSet& b, const FactoredNonzero& r)
{
    require_admissible_base(r, true);
    std::vector<FactoredNonzero> out;
    out.reserve(b.size());
    for (auto e : b) out.push_back(r.pow(e));
    return MultiplicativeSet(std::move(out));
}

MultiplicativeSet prime_switch(const MultiplicativeSet& a, Prime p, Prime q)
{
    if (!is_prime(p)) throw InputError("prime_switch: " + std::to_string(p) + " is not prime");
    if (!is_prime(q)) throw InputError("prime_switch: " + std::to_string(q) + " is not prime");
    if (p == q) throw InputError("prime_switch: p and q must differ");
    std::vector<FactoredNonzero> out;
    out.reserve(a.size());
    for (const auto& x : a) {
        if (x.exponent_of(q) != 0) {
            throw InputError("prime_switch: " + std::to_string(q) + " divides " + x.to_string());
        }
        std::vector<PrimePower> f(x.factors().begin(), x.factors().end());
        for (auto& pp : f) {
            if (pp.prime == p) pp.prime = q;
        }
        out.push_back(FactoredNonzero::from_factors(x.negative(), std::move(f)));
    }
    return MultiplicativeSet(std::move(out));
}

MultiplicativeSet geometric_set(std::size_t n, const FactoredNonzero& r)
{
    if (n == 0) throw InputError("geometric_set: n must be at least 1");
    require_admissible_base(r, false);
    std::vector<FactoredNonzero> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(r.pow(static_cast<Exponent>(i)));
    return MultiplicativeSet(std::move(out));
}

std::int64_t safe_base(const AdditiveSet& a)
{
    if (a.empty()) throw InputError("safe_base: empty input set");
    return 2 * (a.max() - a.min()) + 1;
}

AdditiveSet base_expansion(const AdditiveSet& a, std::size_t k, std::int64_t m)
{
    if (a.empty()) throw InputError("base_expansion: empty input set");
    if (k == 0) throw InputError("base_expansion: k must be at least 1");
    if (m <= 0) throw InputError("base_expansion: m must be positive");

    std::vector<std::int64_t> digits;
    for (auto x : a) digits.push_back(x - a.min());

    std::vector<std::int64_t> place(k, 1);
    for (std::size_t i = 1; i < k; ++i) place[i] = checked_mul(place[i - 1], m);

    std::vector<std::size_t> odometer(k, 0);
    std::vector<std::int64_t> out;
    for (;;) {
        std::int64_t value = 0;
        for (std::size_t i = 0; i < k; ++i) value = checked_add(value, checked_mul(digits[odometer[i]], place[i]));
        out.push_back(value);
        std::size_t i = 0;
        while (i < k && ++odometer[i] == digits.size()) odometer[i++] = 0;
        if (i == k) break;
    }
    return AdditiveSet(std::move(out));
}

std::vector<MultiplicativeSet> mptq_family(const MultiplicativeSet& a, const std::vector<std::size_t>& k_values)
{
    const auto two = FactoredNonzero::from_integer(2);
    const AdditiveSet exponents = log_power(a, two);
    if (!classify(a).is_mptq()) throw InputError("mptq_family: input set is not MPTQ");
    const std::int64_t m = safe_base(exponents);

    std::vector<MultiplicativeSet> out(k_values.size());
    std::vector<std::exception_ptr> errors(k_values.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < k_values.size(); ++i) {
        try {
            out[i] = exp_power(base_expansion(exponents, k_values[i], m), two);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace mptq
