#include "mptq/setops.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace mptq {

namespace {

using FactoredSet = std::unordered_set<FactoredNonzero, FactoredHash>;

void require_nonempty(bool empty, const char* what)
{
    if (empty) throw InputError(std::string(what) + ": empty input set");
}

FactoredSet products_of(const MultiplicativeSet& a)
{
    FactoredSet out;
    out.reserve(a.size() * (a.size() + 1) / 2);
    const auto& e = a.elements();
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i; j < e.size(); ++j) out.insert(e[i] * e[j]);
    }
    return out;
}

FactoredSet quotients_of(const MultiplicativeSet& a)
{
    FactoredSet out;
    out.reserve(a.size() * a.size());
    const auto& e = a.elements();
    for (const auto& x : e) {
        for (const auto& y : e) out.insert(x / y);
    }
    return out;
}

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<FactoredNonzero> canonical_sorted(const FactoredSet& s)
{
    std::vector<FactoredNonzero> v(s.begin(), s.end());
    std::sort(v.begin(), v.end(), CanonicalLess{});
    return v;
}

std::vector<MultiplicityEntry> to_entries(std::unordered_map<FactoredNonzero, std::vector<ElementPair>, FactoredHash> m)
{
    std::vector<MultiplicityEntry> out;
    out.reserve(m.size());
    for (auto& [value, pairs] : m) out.push_back({value, std::move(pairs)});
    std::sort(out.begin(), out.end(),
              [](const MultiplicityEntry& x, const MultiplicityEntry& y) { return canonical_compare(x.value, y.value) < 0; });
    return out;
}

}  // namespace

// Containers ---------------------------------------------------------------

MultiplicativeSet::MultiplicativeSet(std::vector<FactoredNonzero> elements) : elements_(std::move(elements))
{
    std::sort(elements_.begin(), elements_.end(), CanonicalLess{});
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

MultiplicativeSet MultiplicativeSet::of(std::initializer_list<std::int64_t> values)
{
    std::vector<FactoredNonzero> v;
    v.reserve(values.size());
    for (auto x : values) v.push_back(FactoredNonzero::from_integer(x));
    return MultiplicativeSet(std::move(v));
}

MultiplicativeSet MultiplicativeSet::parse(const std::vector<std::string>& literals)
{
    std::vector<FactoredNonzero> v;
    v.reserve(literals.size());
    for (const auto& s : literals) v.push_back(parse_number(s));
    return MultiplicativeSet(std::move(v));
}

bool MultiplicativeSet::contains(const FactoredNonzero& x) const
{
    return std::binary_search(elements_.begin(), elements_.end(), x, CanonicalLess{});
}

bool MultiplicativeSet::insert(const FactoredNonzero& x)
{
    auto it = std::lower_bound(elements_.begin(), elements_.end(), x, CanonicalLess{});
    if (it != elements_.end() && *it == x) return false;
    elements_.insert(it, x);
    return true;
}

MultiplicativeSet MultiplicativeSet::with(const FactoredNonzero& x) const
{
    MultiplicativeSet out = *this;
    out.insert(x);
    return out;
}

MultiplicativeSet MultiplicativeSet::scaled(const FactoredNonzero& c) const
{
    std::vector<FactoredNonzero> v;
    v.reserve(size());
    for (const auto& x : elements_) v.push_back(x * c);
    return MultiplicativeSet(std::move(v));
}

std::vector<std::string> MultiplicativeSet::to_strings() const
{
    std::vector<std::string> out;
    out.reserve(size());
    for (const auto& x : elements_) out.push_back(x.to_string());
    return out;
}

AdditiveSet::AdditiveSet(std::vector<std::int64_t> elements) : elements_(sorted_unique(std::move(elements))) {}

AdditiveSet::AdditiveSet(std::initializer_list<std::int64_t> values)
    : elements_(sorted_unique(std::vector<std::int64_t>(values)))
{
}

bool AdditiveSet::contains(std::int64_t x) const
{
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

LatticeSet::LatticeSet(std::vector<ExponentVector> elements) : elements_(sorted_unique(std::move(elements))) {}

// Names --------------------------------------------------------------------

std::string_view verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::mptq: return "MPTQ";
    case Verdict::quotient_dominated: return "quotient-dominated";
    case Verdict::mstd: return "MSTD";
    case Verdict::difference_dominated: return "difference-dominated";
    case Verdict::balanced: return "balanced";
    }
    return "balanced";
}

std::string_view mode_name(Mode m)
{
    return m == Mode::multiplicative ? "multiplicative" : "additive";
}

// Derived sets -------------------------------------------------------------

MultiplicativeSet product_set(const MultiplicativeSet& a)
{
    require_nonempty(a.empty(), "product_set");
    auto s = products_of(a);
    return MultiplicativeSet(std::vector<FactoredNonzero>(s.begin(), s.end()));
}

MultiplicativeSet quotient_set(const MultiplicativeSet& a)
{
    require_nonempty(a.empty(), "quotient_set");
    auto s = quotients_of(a);
    return MultiplicativeSet(std::vector<FactoredNonzero>(s.begin(), s.end()));
}

AdditiveSet sum_set(const AdditiveSet& b)
{
    require_nonempty(b.empty(), "sum_set");
    std::vector<std::int64_t> out;
    const auto& e = b.elements();
    out.reserve(e.size() * (e.size() + 1) / 2);
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i; j < e.size(); ++j) out.push_back(e[i] + e[j]);
    }
    return AdditiveSet(std::move(out));
}

AdditiveSet difference_set(const AdditiveSet& b)
{
    require_nonempty(b.empty(), "difference_set");
    std::vector<std::int64_t> out;
    out.reserve(b.size() * b.size());
    for (auto x : b) {
        for (auto y : b) out.push_back(x - y);
    }
    return AdditiveSet(std::move(out));
}

LatticeSet sum_set(const LatticeSet& b)
{
    require_nonempty(b.empty(), "sum_set");
    std::vector<ExponentVector> out;
    const auto& e = b.elements();
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i; j < e.size(); ++j) out.push_back(e[i] + e[j]);
    }
    return LatticeSet(std::move(out));
}

LatticeSet difference_set(const LatticeSet& b)
{
    require_nonempty(b.empty(), "difference_set");
    std::vector<ExponentVector> out;
    for (const auto& x : b) {
        for (const auto& y : b) out.push_back(x - y);
    }
    return LatticeSet(std::move(out));
}

// Classification -----------------------------------------------------------

std::uint32_t k_special_level(std::size_t product_size, std::size_t quotient_size, std::size_t set_size)
{
    if (set_size == 0) return 0;
    const auto gap = static_cast<std::int64_t>(product_size) - static_cast<std::int64_t>(quotient_size);
    const auto n = static_cast<std::int64_t>(set_size);
    std::uint32_t level = 0;
    for (std::int64_t k = 1;; ++k) {
        // k(k-3) is always even.
        std::int64_t threshold = k * n + k * (k - 3) / 2 + 1;
        if (gap < threshold) break;
        level = static_cast<std::uint32_t>(k);
    }
    return level;
}

std::pair<std::size_t, std::size_t> sizes_after_prime_adjoin(std::size_t product_size, std::size_t quotient_size,
                                                             std::size_t set_size, std::size_t t)
{
    for (std::size_t i = 0; i < t; ++i) {
        product_size += set_size + i + 1;
        quotient_size += 2 * (set_size + i);
    }
    return {product_size, quotient_size};
}

ClassificationReport multiplicative_report(std::size_t size, std::size_t products, std::size_t quotients)
{
    ClassificationReport r;
    r.mode = Mode::multiplicative;
    r.size = size;
    r.product_size = products;
    r.quotient_size = quotients;
    if (products > quotients) {
        r.verdict = Verdict::mptq;
        r.k_special = k_special_level(products, quotients, size);
    } else {
        r.verdict = products < quotients ? Verdict::quotient_dominated : Verdict::balanced;
    }
    return r;
}

ClassificationReport additive_report(std::size_t size, std::size_t sums, std::size_t differences)
{
    ClassificationReport r;
    r.mode = Mode::additive;
    r.size = size;
    r.sum_size = sums;
    r.difference_size = differences;
    if (sums > differences) {
        r.verdict = Verdict::mstd;
    } else {
        r.verdict = sums < differences ? Verdict::difference_dominated : Verdict::balanced;
    }
    return r;
}

ClassificationReport classify(const MultiplicativeSet& a)
{
    require_nonempty(a.empty(), "classify");
    return multiplicative_report(a.size(), products_of(a).size(), quotients_of(a).size());
}

ClassificationReport classify(const AdditiveSet& b)
{
    require_nonempty(b.empty(), "classify");
    return additive_report(b.size(), sum_set(b).size(), difference_set(b).size());
}

ClassificationReport classify(const LatticeSet& b)
{
    require_nonempty(b.empty(), "classify");
    return additive_report(b.size(), sum_set(b).size(), difference_set(b).size());
}

// Multiplicity maps --------------------------------------------------------

std::vector<MultiplicityEntry> quotient_multiplicity(const MultiplicativeSet& a)
{
    require_nonempty(a.empty(), "quotient_multiplicity");
    std::unordered_map<FactoredNonzero, std::vector<ElementPair>, FactoredHash> m;
    const auto& e = a.elements();
    const auto minus_one = FactoredNonzero().negated();
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = 0; j < e.size(); ++j) {
            FactoredNonzero q = e[i] / e[j];
            // x/(-x) and (-x)/x describe the same unordered pair.
            if (q == minus_one && i > j) continue;
            m[q].emplace_back(e[i], e[j]);
        }
    }
    return to_entries(std::move(m));
}

std::vector<MultiplicityEntry> product_multiplicity(const MultiplicativeSet& a)
{
    require_nonempty(a.empty(), "product_multiplicity");
    std::unordered_map<FactoredNonzero, std::vector<ElementPair>, FactoredHash> m;
    const auto& e = a.elements();
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = i; j < e.size(); ++j) m[e[i] * e[j]].emplace_back(e[i], e[j]);
    }
    return to_entries(std::move(m));
}

IdentitySides quotient_identity(const MultiplicativeSet& a)
{
    const auto entries = quotient_multiplicity(a);
    const auto n = static_cast<std::int64_t>(a.size());
    const auto one = FactoredNonzero();
    IdentitySides sides;
    sides.lhs_doubled = n * (n - 1) + 1 - static_cast<std::int64_t>(entries.size());
    for (const auto& entry : entries) {
        if (entry.value == one) continue;
        const auto count = static_cast<std::int64_t>(entry.pairs.size());
        auto c = abs_compare(entry.value, one);
        if (c > 0) {
            sides.rhs_doubled += 2 * (count - 1);
        } else if (c == 0) {
            sides.rhs_doubled += 2 * count - 1;  // q = -1
        }
    }
    return sides;
}

IdentitySides product_identity(const MultiplicativeSet& a)
{
    const auto entries = product_multiplicity(a);
    const auto n = static_cast<std::int64_t>(a.size());
    IdentitySides sides;
    sides.lhs_doubled = n * (n + 1) - 2 * static_cast<std::int64_t>(entries.size());
    for (const auto& entry : entries) sides.rhs_doubled += 2 * (static_cast<std::int64_t>(entry.pairs.size()) - 1);
    return sides;
}

TrivialBounds trivial_bounds(std::size_t set_size)
{
    if (set_size == 0) throw InputError("trivial_bounds: set size must be at least 1");
    const std::uint64_t n = set_size;
    return {n * (n + 1) / 2, n * (n - 1) + 1};
}

AdjoinAnalysis adjoin_analysis(const MultiplicativeSet& a, const FactoredNonzero& x)
{
    if (a.contains(x)) throw InputError("adjoin_analysis: " + x.to_string() + " is already in the set");
    const FactoredSet old_products = products_of(a);
    const FactoredSet old_quotients = quotients_of(a);

    FactoredSet products, quotients;
    auto add_product = [&](FactoredNonzero v) {
        if (!old_products.contains(v)) products.insert(std::move(v));
    };
    auto add_quotient = [&](FactoredNonzero v) {
        if (!old_quotients.contains(v)) quotients.insert(std::move(v));
    };
    add_product(x * x);
    add_quotient(FactoredNonzero());
    for (const auto& y : a) {
        add_product(x * y);
        add_quotient(x / y);
        add_quotient(y / x);
    }

    AdjoinAnalysis out;
    out.new_products = products.size();
    out.new_quotients = quotients.size();
    out.products = canonical_sorted(products);
    out.quotients = canonical_sorted(quotients);
    return out;
}

// Structure ----------------------------------------------------------------

std::optional<FactoredNonzero> symmetry_witness(const MultiplicativeSet& a)
{
    require_nonempty(a.empty(), "symmetry_witness");
    // |c| must equal |min|*|max|; with ties at either end the sign is not
    // forced, so try both.
    const FactoredNonzero candidate = a.front() * a.back();
    for (const auto& c : {candidate, candidate.negated()}) {
        bool ok = std::all_of(a.begin(), a.end(), [&](const FactoredNonzero& x) { return a.contains(c / x); });
        if (ok) return c;
    }
    return std::nullopt;
}

MultiplierSequence to_multiplier_sequence(const MultiplicativeSet& a)
{
    require_nonempty(a.empty(), "to_multiplier_sequence");
    MultiplierSequence ms;
    ms.head = a.front();
    for (std::size_t i = 1; i < a.size(); ++i) ms.ratios.push_back(a[i] / a[i - 1]);
    return ms;
}

MultiplicativeSet from_multiplier_sequence(const MultiplierSequence& ms)
{
    const FactoredNonzero one;
    std::vector<FactoredNonzero> v{ms.head};
    for (const auto& r : ms.ratios) {
        if (r.is_one()) throw InputError("multiplier sequence: ratio equal to 1");
        if (abs_compare(r, one) < 0) throw InputError("multiplier sequence: ratio " + r.to_string() + " has |r| < 1");
        v.push_back(v.back() * r);
    }
    MultiplicativeSet out(v);
    if (out.size() != v.size()) throw InputError("multiplier sequence: decoded elements are not distinct");
    return out;
}

std::string to_string(const MultiplierSequence& ms)
{
    std::string out = "(" + ms.head.to_string() + " |";
    for (std::size_t i = 0; i < ms.ratios.size(); ++i) out += (i ? ", " : " ") + ms.ratios[i].to_string();
    return out + ")";
}

std::optional<GeometricCertificate> geometric_plus_one_certificate(const MultiplicativeSet& a)
{
    if (a.size() < 2) return std::nullopt;
    const FactoredNonzero one;
    for (std::size_t skip = 0; skip < a.size(); ++skip) {
        std::vector<FactoredNonzero> rest;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i != skip) rest.push_back(a[i]);
        }
        if (rest.size() == 1) {
            // G_{1,r} = {1} for every admissible r; report r = 2.
            return GeometricCertificate{rest[0], FactoredNonzero::from_integer(2), 1, a[skip]};
        }
        const FactoredNonzero r = rest[1] / rest[0];
        if (abs_compare(r, one) == 0) continue;
        bool geometric = true;
        for (std::size_t i = 2; i < rest.size() && geometric; ++i) geometric = (rest[i] / rest[i - 1] == r);
        if (geometric) return GeometricCertificate{rest[0], r, rest.size(), a[skip]};
    }
    return std::nullopt;
}

}  // namespace mptq
