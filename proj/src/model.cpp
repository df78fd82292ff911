#include "ontic/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace ontic {

Model::Model(std::string name, std::size_t dim, std::optional<ModelVariant> variant,
             PureState default_anchor, RegionDistribution distribution)
    : name_(std::move(name)),
      dim_(dim),
      variant_(std::move(variant)),
      default_anchor_(std::move(default_anchor)),
      distribution_(distribution) {}

Model Model::bell(std::size_t d) {
  if (d == 0) throw std::invalid_argument("model dimension must be >= 1");
  return Model("bell", d, std::nullopt, PureState::basis_state(d, 0), RegionDistribution::Uniform);
}

Model Model::qubit_hemisphere(RegionDistribution distribution) {
  return Model("qubit-hemisphere", 2, ModelVariant{QubitHemisphere{}}, PureState::basis_state(2, 0),
               distribution);
}

Model Model::general_cap(PureState anchor, RegionDistribution distribution) {
  const std::size_t d = anchor.dim();
  auto a = anchor;
  return Model("general-cap", d, ModelVariant{GeneralCap{std::move(anchor)}}, std::move(a), distribution);
}

Model Model::basis_cap(Basis basis, RegionDistribution distribution) {
  const std::size_t d = basis.dim();
  auto first = basis[0];
  return Model("basis-cap", d, ModelVariant{BasisCap{std::move(basis)}}, std::move(first), distribution);
}

Model Model::from_name(std::string_view name, std::size_t d, RegionDistribution distribution) {
  if (d == 0) throw std::invalid_argument("model dimension must be >= 1");
  if (name == "bell") return bell(d);
  if (name == "qubit-hemisphere") {
    if (d != 2) throw std::invalid_argument("qubit-hemisphere model requires d = 2");
    return qubit_hemisphere(distribution);
  }
  if (name == "general-cap") return general_cap(PureState::basis_state(d, 0), distribution);
  if (name == "basis-cap") return basis_cap(Basis::computational(d), distribution);
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

const std::vector<std::string>& Model::names() {
  static const std::vector<std::string> all{"bell", "qubit-hemisphere", "general-cap", "basis-cap"};
  return all;
}

const PureState& Model::ordering_anchor_for(const PureState& direction) const {
  if (!variant_) return default_anchor_;
  return ordering_anchor(direction, *variant_);
}

EpistemicState Model::prepare(const PureState& psi) const {
  if (psi.dim() != dim_) throw std::invalid_argument("prepare: state dimension does not match model");
  if (!variant_) return prepare_bell(psi);
  return prepare_modified(psi, *variant_, distribution_);
}

OutcomeIndex Model::respond(const OnticState& lambda, const OrderedMeasurement& measurement) const {
  if (lambda.dim() != dim_ || measurement.dim() != dim_) {
    throw std::invalid_argument("respond: dimension does not match model");
  }
  const PureState& anchor = ordering_anchor_for(lambda.direction());
  if (measurement.anchor().same_ray(anchor)) return respond_bell(lambda, measurement);
  const auto ordered = reorder_for_anchor(measurement, anchor);
  return {ordered.source_index()[respond_bell(lambda, ordered).value]};
}

OnticState Model::sample(const EpistemicState& e, Rng& rng) const { return ontic::sample(e, rng, cap_regions()); }

OutcomeIndex Model::forced_outcome(const RegionDescriptor& region, const OrderedMeasurement& measurement) const {
  if (region.slab_at_top()) {
    // Lower qubit hemisphere: measurements stay ordered for the north pole and
    // the slab at the top of [0, 1] lands in the last interval.
    const auto ordered = reorder_for_anchor(measurement, default_anchor_);
    return {ordered.source_index()[ordered.dim() - 1]};
  }
  const auto ordered = reorder_for_anchor(measurement, region.anchor());
  return {ordered.source_index()[0]};
}

std::vector<double> Model::outcome_masses(const PureState& psi, const OrderedMeasurement& measurement) const {
  if (measurement.dim() != dim_) throw std::invalid_argument("outcome_masses: dimension mismatch");
  const auto e = prepare(psi);
  std::vector<double> mass(dim_, 0.0);
  for (const auto& [weight, component] : e.components()) {
    if (const auto* line = std::get_if<DeltaLine>(&component)) {
      const auto ordered = reorder_for_anchor(measurement, ordering_anchor_for(line->center));
      const auto c = cumulative_weights(line->center, ordered);
      for (std::size_t k = 0; k < dim_; ++k) {
        const double lo = std::max(k == 0 ? 0.0 : c[k - 1], line->lo);
        const double hi = std::min(c[k], line->hi);
        if (hi > lo) mass[ordered.source_index()[k]] += weight * (hi - lo) / (line->hi - line->lo);
      }
    } else {
      mass[forced_outcome(std::get<RegionUniform>(component).region, measurement).value] += weight;
    }
  }
  return mass;
}

OrderedMeasurement Model::random_ordered_measurement(Rng& rng) const {
  return order_for_anchor(random_measurement(dim_, rng), default_anchor_);
}

}  // namespace ontic
