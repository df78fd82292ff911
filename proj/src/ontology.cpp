#include "ontic/ontology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ontic {
namespace {

bool same_component(const SupportComponent& a, const SupportComponent& b) {
  if (a.index() != b.index()) return false;
  if (const auto* da = std::get_if<DeltaLine>(&a)) {
    const auto& db = std::get<DeltaLine>(b);
    return da->center.same_ray(db.center) && da->lo == db.lo && da->hi == db.hi;
  }
  const auto& ra = std::get<RegionUniform>(a);
  const auto& rb = std::get<RegionUniform>(b);
  return ra.region == rb.region && ra.distribution == rb.distribution;
}

double pair_overlap(const WeightedComponent& a, const WeightedComponent& b) {
  if (const auto* da = std::get_if<DeltaLine>(&a.component)) {
    const auto* db = std::get_if<DeltaLine>(&b.component);
    if (db == nullptr || !da->center.same_ray(db->center)) return 0.0;
    const double common = std::min(da->hi, db->hi) - std::max(da->lo, db->lo);
    if (common <= 0.0) return 0.0;
    return std::min(a.weight * common / (da->hi - da->lo), b.weight * common / (db->hi - db->lo));
  }
  const auto* rb = std::get_if<RegionUniform>(&b.component);
  if (rb == nullptr) return 0.0;
  const auto& ra = std::get<RegionUniform>(a.component);
  if (!(ra.region == rb->region) || ra.distribution != rb->distribution) return 0.0;
  return std::min(a.weight, b.weight);
}

}  // namespace

OnticState::OnticState(PureState direction, double x) : direction_(std::move(direction)), x_(x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("OnticState: x must lie in [0, 1], got " + std::to_string(x));
  }
}

RegionDescriptor::RegionDescriptor(RegionKind kind, Basis frame, std::size_t basis_index)
    : kind_(kind), frame_(std::make_shared<const Basis>(std::move(frame))), basis_index_(basis_index) {}

RegionDescriptor RegionDescriptor::qubit_cap0() {
  return RegionDescriptor(RegionKind::QubitCap0, Basis::computational(2), 0);
}

RegionDescriptor RegionDescriptor::qubit_cap1() {
  return RegionDescriptor(RegionKind::QubitCap1,
                          Basis({PureState::basis_state(2, 1), PureState::basis_state(2, 0)}), 1);
}

RegionDescriptor RegionDescriptor::general_cap(const PureState& anchor) {
  return RegionDescriptor(RegionKind::GeneralCap, complete_basis(anchor), 0);
}

RegionDescriptor RegionDescriptor::basis_cap(const Basis& basis, std::size_t j) {
  if (j >= basis.dim()) throw std::invalid_argument("RegionDescriptor::basis_cap: index out of range");
  // Frame starts at |j> and continues with the remaining basis elements.
  std::vector<PureState> frame{basis[j]};
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    if (k != j) frame.push_back(basis[k]);
  }
  return RegionDescriptor(RegionKind::BasisCap, Basis(std::move(frame)), j);
}

std::string_view RegionDescriptor::tag() const {
  switch (kind_) {
    case RegionKind::QubitCap0: return "qubit-cap-0";
    case RegionKind::QubitCap1: return "qubit-cap-1";
    case RegionKind::GeneralCap: return "general-cap";
    case RegionKind::BasisCap: return "basis-cap";
  }
  return "unknown";
}

bool operator==(const RegionDescriptor& a, const RegionDescriptor& b) {
  if (a.kind_ != b.kind_ || a.dim() != b.dim() || a.basis_index_ != b.basis_index_) return false;
  if (a.frame_ == b.frame_) return true;
  if (a.kind_ != RegionKind::BasisCap) return a.anchor().same_ray(b.anchor());
  // A basis cap is tied to the whole preferred basis, not only |j>.
  for (std::size_t k = 0; k < a.dim(); ++k) {
    bool found = false;
    for (std::size_t m = 0; m < b.dim() && !found; ++m) found = a.frame()[k].same_ray(b.frame()[m]);
    if (!found) return false;
  }
  return true;
}

std::string_view to_string(RegionDistribution distribution) {
  switch (distribution) {
    case RegionDistribution::Uniform: return "fubini-study-uniform";
    case RegionDistribution::CoreCap: return "core-cap";
  }
  return "unknown";
}

RegionDistribution region_distribution_from_string(std::string_view tag) {
  if (tag == "fubini-study-uniform") return RegionDistribution::Uniform;
  if (tag == "core-cap") return RegionDistribution::CoreCap;
  throw std::invalid_argument("unknown region distribution '" + std::string(tag) + "'");
}

EpistemicState::EpistemicState(std::size_t dim, std::vector<WeightedComponent> components)
    : dim_(dim), components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("EpistemicState: no components");
  double total = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    if (!(c.weight > 0.0)) throw std::invalid_argument("EpistemicState: weights must be positive");
    total += c.weight;
    if (const auto* line = std::get_if<DeltaLine>(&c.component)) {
      if (line->center.dim() != dim) throw std::invalid_argument("EpistemicState: dimension mismatch");
      if (!(0.0 <= line->lo && line->lo < line->hi && line->hi <= 1.0)) {
        throw std::invalid_argument("EpistemicState: delta-line interval must satisfy 0 <= lo < hi <= 1");
      }
    } else if (std::get<RegionUniform>(c.component).region.dim() != dim) {
      throw std::invalid_argument("EpistemicState: dimension mismatch");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (same_component(components_[j].component, c.component)) {
        throw std::invalid_argument("EpistemicState: duplicate component");
      }
    }
  }
  if (std::abs(total - 1.0) > kArithmeticTol) {
    throw std::invalid_argument("EpistemicState: weights sum to " + std::to_string(total));
  }
}

OnticState sample(const EpistemicState& e, Rng& rng, const RegionOracle& regions) {
  const auto& comps = e.components();
  std::size_t pick = comps.size() - 1;
  if (comps.size() > 1) {
    double u = rng.uniform();
    for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
      if (u < comps[i].weight) {
        pick = i;
        break;
      }
      u -= comps[i].weight;
    }
  }
  const auto& chosen = comps[pick].component;
  if (const auto* line = std::get_if<DeltaLine>(&chosen)) {
    return OnticState(line->center, line->lo + (line->hi - line->lo) * rng.uniform());
  }
  return regions.sample(std::get<RegionUniform>(chosen), rng);
}

bool support_contains(const SupportComponent& component, const OnticState& lambda,
                      const RegionOracle& regions) {
  if (const auto* line = std::get_if<DeltaLine>(&component)) {
    return lambda.direction().same_ray(line->center) && lambda.x() >= line->lo &&
           lambda.x() <= line->hi;
  }
  return regions.contains(std::get<RegionUniform>(component), lambda);
}

double overlap_measure(const EpistemicState& e1, const EpistemicState& e2) {
  if (e1.dim() != e2.dim()) throw std::invalid_argument("overlap_measure: dimension mismatch");
  double total = 0.0;
  for (const auto& a : e1.components()) {
    for (const auto& b : e2.components()) total += pair_overlap(a, b);
  }
  return std::min(total, 1.0);
}

bool support_intersects(const EpistemicState& e1, const EpistemicState& e2) {
  return overlap_measure(e1, e2) > 0.0;
}

}  // namespace ontic
