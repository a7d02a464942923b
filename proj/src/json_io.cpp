#include "mptq/json_io.hpp"

#include <charconv>

namespace mptq {

using nlohmann::json;

namespace {

json optional_size(const std::optional<std::size_t>& v)
{
    return v ? json(*v) : json(nullptr);
}

json strings(const std::vector<FactoredNonzero>& v)
{
    json out = json::array();
    for (const auto& x : v) out.push_back(x.to_string());
    return out;
}

void require_array(const json& j)
{
    if (!j.is_array()) throw InputError("set literal must be a JSON array");
}

}  // namespace

std::int64_t parse_integer(const std::string& text)
{
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw InputError("malformed integer: '" + text + "'");
    }
    return value;
}

MultiplicativeSet multiplicative_from_json(const json& j)
{
    require_array(j);
    std::vector<FactoredNonzero> v;
    for (const auto& x : j) {
        if (x.is_string()) {
            v.push_back(parse_number(x.get<std::string>()));
        } else if (x.is_number_integer()) {
            v.push_back(FactoredNonzero::from_integer(x.get<std::int64_t>()));
        } else {
            throw InputError("set element must be a number-literal string: " + x.dump());
        }
    }
    const std::size_t given = v.size();
    MultiplicativeSet s(std::move(v));
    if (s.size() != given) throw InputError("set literal contains duplicate elements");
    return s;
}

AdditiveSet additive_from_json(const json& j)
{
    require_array(j);
    std::vector<std::int64_t> v;
    for (const auto& x : j) {
        if (x.is_string()) {
            v.push_back(parse_integer(x.get<std::string>()));
        } else if (x.is_number_integer()) {
            v.push_back(x.get<std::int64_t>());
        } else {
            throw InputError("additive set element must be an integer: " + x.dump());
        }
    }
    const std::size_t given = v.size();
    AdditiveSet s(std::move(v));
    if (s.size() != given) throw InputError("set literal contains duplicate elements");
    return s;
}

json to_json(const MultiplicativeSet& s)
{
    return strings(s.elements());
}

json to_json(const AdditiveSet& s)
{
    json out = json::array();
    for (auto x : s) out.push_back(std::to_string(x));
    return out;
}

json to_json(const ClassificationReport& r)
{
    return {
        {"mode", mode_name(r.mode)},
        {"size", r.size},
        {"product_size", optional_size(r.product_size)},
        {"quotient_size", optional_size(r.quotient_size)},
        {"sum_size", optional_size(r.sum_size)},
        {"difference_size", optional_size(r.difference_size)},
        {"verdict", verdict_name(r.verdict)},
        {"k_special", r.k_special},
    };
}

json to_json(const MultiplierSequence& ms)
{
    return {{"head", ms.head.to_string()}, {"ratios", strings(ms.ratios)}, {"text", to_string(ms)}};
}

json to_json(const AdjoinAnalysis& a)
{
    return {{"new_products", a.new_products},
            {"new_quotients", a.new_quotients},
            {"products", strings(a.products)},
            {"quotients", strings(a.quotients)}};
}

json to_json(const ReportedSet& s)
{
    json j = to_json(s.report);
    j["set"] = s.multiplicative ? to_json(*s.multiplicative) : to_json(*s.additive);
    j["expansions"] = s.expansions;
    return j;
}

json summary_to_json(const SearchReport& r)
{
    return {
        {"version", kSchemaVersion},
        {"mode", search_mode_name(r.mode)},
        {"universe_max", r.universe_max},
        {"excluded_primes", r.excluded_primes},
        {"reduced_universe_size", r.reduced_universe_size},
        {"subsets_examined", r.subsets_examined},
        {"found_count", r.found_count},
        {"found_reported", r.found.size()},
        {"expanded_total", r.expanded_total},
        {"wall_time_seconds", r.wall_time_seconds},
        {"complete", r.complete},
    };
}

json to_json(const DensityEstimate& d)
{
    auto mi = d.mptq_interval();
    auto si = d.mstd_interval();
    return {
        {"version", kSchemaVersion},
        {"n", d.n},
        {"samples", d.samples},
        {"seed", d.seed},
        {"mptq_hits", d.mptq_hits},
        {"mstd_hits", d.mstd_hits},
        {"mptq_proportion", d.mptq_proportion()},
        {"mstd_proportion", d.mstd_proportion()},
        {"mptq_ci95", {mi.lower, mi.upper}},
        {"mstd_ci95", {si.lower, si.upper}},
    };
}

json to_json(const SequenceCertificate& c)
{
    json j = {
        {"version", kSchemaVersion},
        {"prefix", strings(c.prefix)},
        {"r", c.r},
        {"growth_checked_up_to", c.growth_checked_up_to},
        {"small_subset_bound", c.small_subset_bound},
        {"sanity_bound", c.sanity_bound},
        {"subsets_checked", c.subsets_checked},
        {"verdict", c.certified ? "certified" : "violated"},
        {"reason", c.reason},
    };
    j["failing_index"] = c.failing_index ? json(*c.failing_index) : json(nullptr);
    j["witness"] = c.witness ? to_json(*c.witness) : json(nullptr);
    return j;
}

json to_json(const PrimeAuditReport& a)
{
    return {
        {"version", kSchemaVersion},
        {"primes", a.count},
        {"max_size", a.max_size},
        {"subsets_checked", a.subsets_checked},
        {"mptq_found", a.mptq_found},
        {"adjoin_step_checks", a.step_checks},
        {"adjoin_step_failures", a.step_failures},
        {"lattice_checked", a.lattice_checked},
        {"lattice_mstd", a.lattice_mstd},
    };
}

json to_json(const ExploreReport& e)
{
    json found = json::array();
    for (const auto& s : e.found) found.push_back(to_json(s));
    return {{"version", kSchemaVersion},
            {"size", e.size},
            {"sequences", e.sequences},
            {"invalid", e.invalid},
            {"found", found}};
}

json to_json(const GridFind& g)
{
    json j = to_json(g.report);
    j["set"] = to_json(g.set);
    return j;
}

}  // namespace mptq
