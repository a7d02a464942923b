#pragma once

// JSON surface shared by the CLI and the tests. Sets travel as arrays of
// number-literal strings; plain JSON integers are accepted on input.

#include <string>

#include "json.hpp"

#include "mptq/certify.hpp"
#include "mptq/sampling.hpp"
#include "mptq/search.hpp"
#include "mptq/setops.hpp"

namespace mptq {

inline constexpr int kSchemaVersion = 1;

MultiplicativeSet multiplicative_from_json(const nlohmann::json& j);
AdditiveSet additive_from_json(const nlohmann::json& j);
std::int64_t parse_integer(const std::string& text);

nlohmann::json to_json(const MultiplicativeSet& s);
nlohmann::json to_json(const AdditiveSet& s);
nlohmann::json to_json(const ClassificationReport& r);
nlohmann::json to_json(const MultiplierSequence& ms);
nlohmann::json to_json(const AdjoinAnalysis& a);
nlohmann::json to_json(const ReportedSet& s);
nlohmann::json summary_to_json(const SearchReport& r);
nlohmann::json to_json(const DensityEstimate& d);
nlohmann::json to_json(const SequenceCertificate& c);
nlohmann::json to_json(const PrimeAuditReport& a);
nlohmann::json to_json(const ExploreReport& e);
nlohmann::json to_json(const GridFind& g);

}  // namespace mptq
