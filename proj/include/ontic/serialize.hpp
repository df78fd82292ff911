#pragma once

// JSON forms of states, measurements, epistemic states and reports. Layouts
// are documented as JSON Schemas under docs/schemas/.

#include <json.hpp>

#include "ontic/ontology.hpp"
#include "ontic/qstate.hpp"
#include "ontic/verify.hpp"

namespace ontic {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

/// {"d", "re", "im"}, canonical global phase.
Json state_to_json(const PureState& psi);
/// Renormalizes; throws std::invalid_argument on malformed input.
PureState state_from_json(const Json& j);

/// {"outcomes": [state...], "anchor": state}.
Json measurement_to_json(const OrderedMeasurement& m);
/// Orders the outcomes for the stored anchor (a no-op for serialized output).
OrderedMeasurement measurement_from_json(const Json& j);

Json epistemic_state_to_json(const EpistemicState& e);
EpistemicState epistemic_state_from_json(const Json& j);

Json to_json(const TrialReport& r);
Json to_json(const PropertyReport& r);
Json to_json(const OverlapEstimate& r);
Json to_json(const EpistemicityVerdict& v);

}  // namespace ontic
