#pragma once

// The psi-epistemic modifications of the Bell model. Response functions are
// the Bell model's; only the epistemic states change. Inside a cap of
// directions close to an anchor there is a slab of x values where every
// anchor-ordered measurement returns outcome 0, and the mass a state puts on
// that slab is spread over the whole slab.
//
// z(chi) = inf { |<phi|chi>|^2 : |<phi|anchor>|^2 >= 1/d }. The minimizer lies in
// span{anchor, chi}; writing phi = cos(t) anchor - sin(t) chi_perp with the
// constraint cos^2 t >= 1/d active gives, for F = |<anchor|chi>|^2,
//   z = (1/d) (sqrt(F) - sqrt((d-1)(1-F)))^2   when F > (d-1)/d,  else 0.
// z_oracle checks this by brute force.

#include <cstddef>
#include <optional>
#include <variant>

#include "ontic/bell_model.hpp"
#include "ontic/ontology.hpp"
#include "ontic/qstate.hpp"
#include "ontic/random.hpp"

namespace ontic {

struct ZValue {
  double value = 0.0;
  double anchor_fidelity = 0.0;
};

/// Closed form of z. Throws std::invalid_argument on dimension mismatch.
ZValue z_closed_form(const PureState& chi, const PureState& anchor);

/// Same, from the anchor fidelity alone. Zero for F <= (d-1)/d + 1e-12.
double z_from_fidelity(double anchor_fidelity, std::size_t d);

struct ZOracleResult {
  double span_minimum = 0.0;        // dense sweep over span{anchor, chi}
  double full_space_minimum = 0.0;  // rejection-filtered Haar candidates
  ZValue z;                         // min of the two
};

/// Brute-force z. `budget` (>= 1000) candidates go to the span sweep and the
/// same number to the full-space Haar cross-check.
ZOracleResult z_oracle(const PureState& chi, const PureState& anchor, std::size_t budget, Rng& rng);

struct QubitHemisphere {};
struct GeneralCap {
  PureState anchor;
};
struct BasisCap {
  Basis basis;
};

using ModelVariant = std::variant<QubitHemisphere, GeneralCap, BasisCap>;

/// The forced-outcome region containing lambda under the variant, if any.
/// Throws std::invalid_argument for QubitHemisphere with d != 2.
std::optional<RegionDescriptor> region_of(const OnticState& lambda, const ModelVariant& variant);

bool in_region(const OnticState& lambda, const ModelVariant& variant);

/// Membership in one specific region: F > (d-1)/d + 1e-12 and x < z (or
/// 1 - x < z for the top slab).
bool in_region(const OnticState& lambda, const RegionDescriptor& region);

/// The cap whose anchor orders measurements for this direction: for BasisCap
/// the element j with |<lambda|j>|^2 > (d-1)/d, else basis[0]; the fixed
/// anchor otherwise.
const PureState& ordering_anchor(const PureState& direction, const ModelVariant& variant);

/// Outside the cap: delta line on [0, 1]. Inside: delta line on [z, 1] with
/// weight 1 - z plus the region component with weight z (mirrored for the
/// lower qubit hemisphere).
EpistemicState prepare_modified(const PureState& psi, const ModelVariant& variant,
                                RegionDistribution distribution = RegionDistribution::Uniform);

/// Direction with anchor fidelity F = 1 - depth around region.anchor(), its
/// component orthogonal to the anchor uniform on the sphere.
PureState cap_direction(const RegionDescriptor& region, double depth, Rng& rng);

/// Point from the region's distribution: F from the Fubini-Study law
/// conditioned on the cap, a uniform direction at that F, acceptance with
/// probability d z(direction), then x uniform on the slab.
OnticState sample_region(const RegionDescriptor& region, Rng& rng,
                         RegionDistribution distribution = RegionDistribution::Uniform);

/// Samples the variant's regions: both qubit hemispheres with equal
/// probability, or a uniformly chosen basis cap.
OnticState sample_region(const ModelVariant& variant, std::size_t d, Rng& rng,
                         RegionDistribution distribution = RegionDistribution::Uniform);

/// |<phi_0|lambda>|^2 >= z(lambda) whenever the direction is in the anchor
/// cap; true outside the cap. Expects `measurement` ordered for `anchor`.
bool outcome0_positivity_check(const PureState& direction, const PureState& anchor,
                               const OrderedMeasurement& measurement);

/// Region sampling and membership for the cap regions above.
class CapRegions final : public RegionOracle {
 public:
  OnticState sample(const RegionUniform& component, Rng& rng) const override;
  bool contains(const RegionUniform& component, const OnticState& lambda) const override;
};

const CapRegions& cap_regions();

}  // namespace ontic
