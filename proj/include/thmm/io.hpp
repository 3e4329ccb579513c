#pragma once

#include <string>

#include <json.hpp>

#include "thmm/expansions.hpp"
#include "thmm/identities.hpp"
#include "thmm/moments.hpp"
#include "thmm/resolvent.hpp"

namespace thmm {

using Json = nlohmann::json;

// Matrices are row lists of [re, im] pairs. Plain real numbers are also
// accepted on input.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {"q", "a", "b", "atoms": [{"t", "weight"}]}
Json measure_to_json(const DiscreteMatrixMeasure& mu);
DiscreteMatrixMeasure measure_from_json(const Json& j);

// {"q", "a", "b", "m", "moments": [s_0, ..., s_m]}
Json moments_to_json(const MomentSequence& seq);
MomentSequence moments_from_json(const Json& j);

Json verdict_to_json(const SolvabilityVerdict& v);
Json report_to_json(const IdentityReport& r);
Json resolvent_to_json(const ResolventEval& e);
Json expansion_to_json(const ExpansionComparison& c);

// Throws InvalidArgument when the file cannot be read or parsed.
Json read_json_file(const std::string& path);
// Throws InvalidArgument when the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);

// Serialization used for every file and stdout document.
std::string dump(const Json& j);

}  // namespace thmm
