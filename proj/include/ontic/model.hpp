#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontic/epistemic_models.hpp"

namespace ontic {

/// One of the registered ontological models: "bell", "qubit-hemisphere",
/// "general-cap", "basis-cap". Response functions are always the Bell
/// cumulative-interval layout; what differs is the epistemic state and the
/// anchor used to order each measurement.
class Model {
 public:
  static Model bell(std::size_t d);
  static Model qubit_hemisphere(RegionDistribution distribution = RegionDistribution::Uniform);
  static Model general_cap(PureState anchor, RegionDistribution distribution = RegionDistribution::Uniform);
  static Model basis_cap(Basis basis, RegionDistribution distribution = RegionDistribution::Uniform);

  /// Default anchors: |0> for general-cap, the computational basis for
  /// basis-cap. Throws std::invalid_argument for an unknown name, d < 1, or
  /// qubit-hemisphere with d != 2.
  static Model from_name(std::string_view name, std::size_t d,
                         RegionDistribution distribution = RegionDistribution::Uniform);

  static const std::vector<std::string>& names();

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const char* layout_tag() const { return kBellLayoutTag; }
  RegionDistribution region_distribution() const { return distribution_; }
  const std::optional<ModelVariant>& variant() const { return variant_; }
  bool is_modified() const { return variant_.has_value(); }

  /// Anchor used to order measurements when the direction is in no cap.
  const PureState& default_anchor() const { return default_anchor_; }

  /// Anchor that orders the measurement for an ontic direction.
  const PureState& ordering_anchor_for(const PureState& direction) const;

  EpistemicState prepare(const PureState& psi) const;

  /// Outcome label in `measurement`'s own ordering, whatever anchor it was
  /// ordered for.
  OutcomeIndex respond(const OnticState& lambda, const OrderedMeasurement& measurement) const;

  OnticState sample(const EpistemicState& e, Rng& rng) const;

  /// Analytic outcome masses of prepare(psi) under the response functions:
  /// delta-line pieces by interval intersection, region components to their
  /// forced outcome. Labels follow `measurement`'s ordering.
  std::vector<double> outcome_masses(const PureState& psi, const OrderedMeasurement& measurement) const;

  /// Outcome every ontic state in the region yields for this measurement
  /// (label in `measurement`'s ordering).
  OutcomeIndex forced_outcome(const RegionDescriptor& region, const OrderedMeasurement& measurement) const;

  /// A random basis ordered for default_anchor().
  OrderedMeasurement random_ordered_measurement(Rng& rng) const;

 private:
  Model(std::string name, std::size_t dim, std::optional<ModelVariant> variant, PureState default_anchor,
        RegionDistribution distribution);

  std::string name_;
  std::size_t dim_;
  std::optional<ModelVariant> variant_;
  PureState default_anchor_;
  RegionDistribution distribution_;
};

}  // namespace ontic
