#include "mptq/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace mptq {

namespace {

constexpr std::uint64_t kSieveLimit = 1u << 20;

const std::vector<std::uint32_t>& sieve_primes()
{
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kSieveLimit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint64_t i = 2; i <= kSieveLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= kSieveLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

Exponent checked_add(Exponent a, Exponent b)
{
    Exponent r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}

Exponent checked_mul(Exponent a, Exponent b)
{
    Exponent r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}

// Merge two sorted prime-power lists, adding (sign=+1) or subtracting
// (sign=-1) the exponents of b. Zero exponents are dropped.
std::vector<PrimePower> merge(std::span<const PrimePower> a, std::span<const PrimePower> b, int sign)
{
    std::vector<PrimePower> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].prime < b[j].prime)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].prime < a[i].prime) {
            out.push_back({b[j].prime, sign > 0 ? b[j].exponent : checked_mul(b[j].exponent, -1)});
            ++j;
        } else {
            Exponent e = checked_add(a[i].exponent, sign > 0 ? b[j].exponent : checked_mul(b[j].exponent, -1));
            if (e != 0) out.push_back({a[i].prime, e});
            ++i;
            ++j;
        }
    }
    return out;
}

std::vector<PrimePower> canonicalize(std::vector<PrimePower> factors)
{
    std::sort(factors.begin(), factors.end(),
              [](const PrimePower& x, const PrimePower& y) { return x.prime < y.prime; });
    std::vector<PrimePower> out;
    out.reserve(factors.size());
    for (const auto& f : factors) {
        if (!out.empty() && out.back().prime == f.prime) {
            out.back().exponent = checked_add(out.back().exponent, f.exponent);
        } else {
            out.push_back(f);
        }
    }
    std::erase_if(out, [](const PrimePower& f) { return f.exponent == 0; });
    return out;
}

std::size_t mix(std::size_t h, std::uint64_t v)
{
    v += 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    v ^= v >> 30;
    v *= 0xbf58476d1ce4e5b9ull;
    v ^= v >> 27;
    v *= 0x94d049bb133111ebull;
    v ^= v >> 31;
    return h ^ v;
}

std::size_t hash_factors(int sign, std::span<const PrimePower> factors)
{
    std::size_t h = static_cast<std::size_t>(sign + 7);
    for (const auto& f : factors) {
        h = mix(h, f.prime);
        h = mix(h, static_cast<std::uint64_t>(f.exponent));
    }
    return h;
}

BigInt parse_digits(std::string_view digits, std::string_view whole)
{
    if (digits.empty()) throw InputError("malformed number: '" + std::string(whole) + "'");
    BigInt value = 0;
    for (char c : digits) {
        if (c < '0' || c > '9') throw InputError("malformed number: '" + std::string(whole) + "'");
        value = value * 10 + (c - '0');
    }
    return value;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return result;
}

}  // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for all 64-bit n.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<PrimePower> factor(std::uint64_t n)
{
    if (n == 0) throw InputError("cannot factor zero");
    std::vector<PrimePower> out;
    for (std::uint64_t p : sieve_primes()) {
        if (p * p > n) break;
        if (n % p != 0) continue;
        Exponent e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1 && !is_prime(n)) {
        // Composite with every prime factor above the sieve.
        for (std::uint64_t d = kSieveLimit + 1; d <= n / d; d += 2) {
            if (n % d != 0) continue;
            Exponent e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.push_back({d, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::vector<PrimePower> factor(const BigInt& n)
{
    if (n <= 0) throw InputError("cannot factor a non-positive integer");
    constexpr auto u64_max = std::numeric_limits<std::uint64_t>::max();
    if (n <= u64_max) return factor(static_cast<std::uint64_t>(n));

    std::vector<PrimePower> out;
    BigInt rest = n;
    for (std::uint64_t p : sieve_primes()) {
        if (rest <= u64_max) break;
        Exponent e = 0;
        BigInt q, r;
        for (;;) {
            boost::multiprecision::divide_qr(rest, BigInt(p), q, r);
            if (r != 0) break;
            rest = q;
            ++e;
        }
        if (e) out.push_back({p, e});
    }
    if (rest > u64_max) {
        throw InputError("cannot factor " + n.str() + ": cofactor exceeds 64 bits after trial division");
    }
    for (const auto& f : factor(static_cast<std::uint64_t>(rest))) out.push_back(f);
    return canonicalize(std::move(out));
}

std::vector<Prime> first_primes(std::size_t count)
{
    std::vector<Prime> out;
    for (Prime p = 2; out.size() < count; ++p) {
        if (is_prime(p)) out.push_back(p);
    }
    return out;
}

std::vector<Prime> primes_in(std::uint64_t lo, std::uint64_t hi)
{
    std::vector<Prime> out;
    for (std::uint64_t p = lo + 1; p <= hi; ++p) {
        if (is_prime(p)) out.push_back(p);
    }
    return out;
}

// FactoredNonzero ---------------------------------------------------------

FactoredNonzero FactoredNonzero::from_integer(std::int64_t value)
{
    if (value == 0) throw InputError("zero is not a valid element");
    FactoredNonzero out;
    out.negative_ = value < 0;
    std::uint64_t magnitude = value < 0 ? 0 - static_cast<std::uint64_t>(value) : static_cast<std::uint64_t>(value);
    out.factors_ = factor(magnitude);
    return out;
}

FactoredNonzero FactoredNonzero::from_prime(Prime p)
{
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    FactoredNonzero out;
    out.factors_.push_back({p, 1});
    return out;
}

FactoredNonzero FactoredNonzero::from_factors(bool negative, std::vector<PrimePower> factors)
{
    for (const auto& f : factors) {
        if (!is_prime(f.prime)) throw InputError(std::to_string(f.prime) + " is not prime");
    }
    FactoredNonzero out;
    out.negative_ = negative;
    out.factors_ = canonicalize(std::move(factors));
    return out;
}

Exponent FactoredNonzero::exponent_of(Prime p) const
{
    auto it = std::lower_bound(factors_.begin(), factors_.end(), p,
                               [](const PrimePower& f, Prime q) { return f.prime < q; });
    return (it != factors_.end() && it->prime == p) ? it->exponent : 0;
}

bool FactoredNonzero::is_integer() const
{
    return std::all_of(factors_.begin(), factors_.end(), [](const PrimePower& f) { return f.exponent > 0; });
}

FactoredNonzero FactoredNonzero::inverse() const
{
    FactoredNonzero out = *this;
    for (auto& f : out.factors_) f.exponent = checked_mul(f.exponent, -1);
    return out;
}

FactoredNonzero FactoredNonzero::negated() const
{
    FactoredNonzero out = *this;
    out.negative_ = !negative_;
    return out;
}

FactoredNonzero FactoredNonzero::abs() const
{
    FactoredNonzero out = *this;
    out.negative_ = false;
    return out;
}

FactoredNonzero FactoredNonzero::pow(Exponent k) const
{
    FactoredNonzero out;
    if (k == 0) return out;
    out.negative_ = negative_ && (k % 2 != 0);
    out.factors_ = factors_;
    for (auto& f : out.factors_) f.exponent = checked_mul(f.exponent, k);
    return out;
}

BigInt FactoredNonzero::numerator() const
{
    BigInt n = 1;
    for (const auto& f : factors_) {
        if (f.exponent > 0) n *= boost::multiprecision::pow(BigInt(f.prime), static_cast<unsigned>(f.exponent));
    }
    return n;
}

BigInt FactoredNonzero::denominator() const
{
    BigInt d = 1;
    for (const auto& f : factors_) {
        if (f.exponent < 0) d *= boost::multiprecision::pow(BigInt(f.prime), static_cast<unsigned>(-f.exponent));
    }
    return d;
}

std::optional<std::int64_t> FactoredNonzero::to_int64() const
{
    if (!is_integer()) return std::nullopt;
    BigInt n = numerator();
    if (negative_) n = -n;
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
        return std::nullopt;
    }
    return static_cast<std::int64_t>(n);
}

std::string FactoredNonzero::to_string() const
{
    std::string out = negative_ ? "-" : "";
    out += numerator().str();
    if (!is_integer()) out += "/" + denominator().str();
    return out;
}

std::size_t FactoredNonzero::hash() const
{
    return hash_factors(sign(), factors_);
}

FactoredNonzero operator*(const FactoredNonzero& a, const FactoredNonzero& b)
{
    FactoredNonzero out;
    out.negative_ = a.negative_ != b.negative_;
    out.factors_ = merge(a.factors_, b.factors_, +1);
    return out;
}

FactoredNonzero operator/(const FactoredNonzero& a, const FactoredNonzero& b)
{
    FactoredNonzero out;
    out.negative_ = a.negative_ != b.negative_;
    out.factors_ = merge(a.factors_, b.factors_, -1);
    return out;
}

FactoredNonzero parse_number(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    std::string_view num_digits = body;
    std::string_view den_digits;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        num_digits = body.substr(0, slash);
        den_digits = body.substr(slash + 1);
        if (den_digits.empty()) throw InputError("malformed number: '" + std::string(text) + "'");
    }
    BigInt num = parse_digits(num_digits, text);
    BigInt den = den_digits.empty() ? BigInt(1) : parse_digits(den_digits, text);
    if (den == 0) throw InputError("division by zero in '" + std::string(text) + "'");
    if (num == 0) throw InputError("zero is not a valid element");

    auto factors = factor(num);
    for (const auto& f : factor(den)) factors.push_back({f.prime, -f.exponent});
    return FactoredNonzero::from_factors(negative, std::move(factors));
}

std::strong_ordering abs_compare(const FactoredNonzero& a, const FactoredNonzero& b)
{
    FactoredNonzero ratio = a / b;
    auto f = ratio.factors();
    if (f.empty()) return std::strong_ordering::equal;
    bool all_pos = std::all_of(f.begin(), f.end(), [](const PrimePower& x) { return x.exponent > 0; });
    if (all_pos) return std::strong_ordering::greater;
    bool all_neg = std::all_of(f.begin(), f.end(), [](const PrimePower& x) { return x.exponent < 0; });
    if (all_neg) return std::strong_ordering::less;
    BigInt n = ratio.numerator();
    BigInt d = ratio.denominator();
    if (n < d) return std::strong_ordering::less;
    if (n > d) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::strong_ordering canonical_compare(const FactoredNonzero& a, const FactoredNonzero& b)
{
    auto c = abs_compare(a, b);
    if (c != 0) return c;
    if (a.negative() == b.negative()) return std::strong_ordering::equal;
    return a.negative() ? std::strong_ordering::less : std::strong_ordering::greater;
}

// ExponentVector ----------------------------------------------------------

ExponentVector::ExponentVector(int sign_bit, std::vector<PrimePower> coords)
    : sign_bit_(((sign_bit % 2) + 2) % 2), coords_(canonicalize(std::move(coords)))
{
}

Exponent ExponentVector::coord(Prime p) const
{
    for (const auto& c : coords_) {
        if (c.prime == p) return c.exponent;
    }
    return 0;
}

ExponentVector ExponentVector::operator-() const
{
    ExponentVector out = *this;
    for (auto& c : out.coords_) c.exponent = checked_mul(c.exponent, -1);
    return out;
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b)
{
    ExponentVector out;
    out.sign_bit_ = a.sign_bit_ ^ b.sign_bit_;
    out.coords_ = merge(a.coords_, b.coords_, +1);
    return out;
}

ExponentVector operator-(const ExponentVector& a, const ExponentVector& b)
{
    ExponentVector out;
    out.sign_bit_ = a.sign_bit_ ^ b.sign_bit_;
    out.coords_ = merge(a.coords_, b.coords_, -1);
    return out;
}

std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b)
{
    if (auto c = a.sign_bit_ <=> b.sign_bit_; c != 0) return c;
    return std::lexicographical_compare_three_way(
        a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end(),
        [](const PrimePower& x, const PrimePower& y) {
            if (auto c = x.prime <=> y.prime; c != 0) return c;
            return x.exponent <=> y.exponent;
        });
}

std::size_t ExponentVector::hash() const
{
    return hash_factors(sign_bit_, coords_);
}

std::string ExponentVector::to_string() const
{
    std::string out = "(" + std::to_string(sign_bit_) + ";";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        out += (i ? ", " : " ") + std::to_string(coords_[i].prime) + ":" + std::to_string(coords_[i].exponent);
    }
    return out + ")";
}

ExponentVector to_log(const FactoredNonzero& a)
{
    auto f = a.factors();
    return ExponentVector(a.negative() ? 1 : 0, std::vector<PrimePower>(f.begin(), f.end()));
}

FactoredNonzero from_log(const ExponentVector& v)
{
    auto c = v.coords();
    return FactoredNonzero::from_factors(v.sign_bit() == 1, std::vector<PrimePower>(c.begin(), c.end()));
}

}  // namespace mptq
