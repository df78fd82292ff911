#pragma once

// The unmodified Bell model: delta-line epistemic states and the
// cumulative-interval deterministic response functions.

#include <cstddef>
#include <vector>

#include "ontic/ontology.hpp"
#include "ontic/qstate.hpp"

namespace ontic {

/// Half-open [lo, hi); the last outcome's interval is closed at x = 1.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Tag recorded in reports: which of the admissible support layouts is used.
inline constexpr const char* kBellLayoutTag = "cumulative-interval";

/// delta(|lambda> - |psi>) with x uniform on [0, 1].
EpistemicState prepare_bell(const PureState& psi);

/// Boundaries C_0 <= C_1 <= ... <= C_{d-1} = 1 with
/// C_k = sum_{i<=k} |<lambda|phi_i>|^2, summed with Neumaier compensation and
/// rescaled by the total so the intervals partition [0, 1) exactly.
std::vector<double> cumulative_weights(const PureState& direction, const OrderedMeasurement& measurement);

/// [C_{k-1}, C_k). Throws std::invalid_argument if k >= d or on dimension
/// mismatch.
Interval response_interval(const PureState& direction, const OrderedMeasurement& measurement,
                           std::size_t k);

/// The unique k with C_{k-1} <= x < C_k; d - 1 when x = 1.
OutcomeIndex respond_bell(const OnticState& lambda, const OrderedMeasurement& measurement);

}  // namespace ontic
