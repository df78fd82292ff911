#pragma once

// Model-independent vocabulary: ontic states (direction, x), epistemic states
// as weighted mixtures of symbolic support components, and the exact overlap
// between two epistemic states.

#include <cstddef>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "ontic/qstate.hpp"
#include "ontic/random.hpp"

namespace ontic {

/// A point (|lambda>, x) of CP^{d-1} x [0, 1].
class OnticState {
 public:
  /// Throws std::invalid_argument unless 0 <= x <= 1.
  OnticState(PureState direction, double x);

  const PureState& direction() const { return direction_; }
  double x() const { return x_; }
  std::size_t dim() const { return direction_.dim(); }

 private:
  PureState direction_;
  double x_;
};

/// Outcome label k of a measurement.
struct OutcomeIndex {
  std::size_t value = 0;
  friend auto operator<=>(const OutcomeIndex&, const OutcomeIndex&) = default;
};

enum class RegionKind {
  QubitCap0,   // upper hemisphere, x below (1 - sin theta)/2
  QubitCap1,   // lower hemisphere, x above (1 + sin theta)/2
  GeneralCap,  // F > (d-1)/d around an anchor, x below z
  BasisCap,    // the general cap around element j of a preferred basis
};

/// Names one of the forced-outcome regions. Every region is a cap of
/// directions around `anchor()` with an x-slab of height z(direction); the
/// slab sits at the bottom of [0, 1] except for QubitCap1, where it sits at
/// the top.
class RegionDescriptor {
 public:
  static RegionDescriptor qubit_cap0();
  static RegionDescriptor qubit_cap1();
  static RegionDescriptor general_cap(const PureState& anchor);
  /// Throws std::invalid_argument if j >= basis.dim().
  static RegionDescriptor basis_cap(const Basis& basis, std::size_t j);

  RegionKind kind() const { return kind_; }
  std::size_t dim() const { return frame_->dim(); }
  const PureState& anchor() const { return (*frame_)[0]; }
  /// Orthonormal frame with frame()[0] == anchor(); used by samplers.
  const Basis& frame() const { return *frame_; }
  std::size_t basis_index() const { return basis_index_; }
  bool slab_at_top() const { return kind_ == RegionKind::QubitCap1; }

  std::string_view tag() const;

  friend bool operator==(const RegionDescriptor& a, const RegionDescriptor& b);

 private:
  RegionDescriptor(RegionKind kind, Basis frame, std::size_t basis_index);

  RegionKind kind_;
  std::shared_ptr<const Basis> frame_;
  std::size_t basis_index_ = 0;
};

/// Internal distribution used for a region component. Uniform is the
/// Fubini-Study x Lebesgue measure restricted to the region; CoreCap is the
/// same measure restricted further to directions with 1 - F < 1/(2d).
enum class RegionDistribution { Uniform, CoreCap };

std::string_view to_string(RegionDistribution distribution);
RegionDistribution region_distribution_from_string(std::string_view tag);

/// Direction fixed at `center`, x uniform on [lo, hi].
struct DeltaLine {
  PureState center;
  double lo = 0.0;
  double hi = 1.0;
};

struct RegionUniform {
  RegionDescriptor region;
  RegionDistribution distribution = RegionDistribution::Uniform;
};

using SupportComponent = std::variant<DeltaLine, RegionUniform>;

struct WeightedComponent {
  double weight = 0.0;
  SupportComponent component;
};

class EpistemicState {
 public:
  /// Throws std::invalid_argument if weights are not positive or do not sum
  /// to 1 within 1e-10, if a DeltaLine has lo >= hi or leaves [0, 1], if
  /// dimensions disagree, or if two components are identical.
  EpistemicState(std::size_t dim, std::vector<WeightedComponent> components);

  std::size_t dim() const { return dim_; }
  const std::vector<WeightedComponent>& components() const { return components_; }

 private:
  std::size_t dim_;
  std::vector<WeightedComponent> components_;
};

/// Sampling and membership for region components. The model layer owns the
/// geometry of the regions; ontology only dispatches to it.
class RegionOracle {
 public:
  virtual ~RegionOracle() = default;
  virtual OnticState sample(const RegionUniform& component, Rng& rng) const = 0;
  /// Whether `lambda` lies in the support of the component's distribution.
  virtual bool contains(const RegionUniform& component, const OnticState& lambda) const = 0;
};

/// Draws a component by weight, then a point from it.
OnticState sample(const EpistemicState& e, Rng& rng, const RegionOracle& regions);

/// Whether lambda lies in the support of a single component.
bool support_contains(const SupportComponent& component, const OnticState& lambda,
                      const RegionOracle& regions);

/// Probability mass the two states share: min(w1, w2) for region components
/// with identical region and distribution; for delta lines with the same
/// center, min(w1 |I1 n I2| / |I1|, w2 |I1 n I2| / |I2|); zero otherwise.
/// Throws std::invalid_argument on mixed dimensions.
double overlap_measure(const EpistemicState& e1, const EpistemicState& e2);

/// True iff overlap_measure(e1, e2) > 0.
bool support_intersects(const EpistemicState& e1, const EpistemicState& e2);

}  // namespace ontic
