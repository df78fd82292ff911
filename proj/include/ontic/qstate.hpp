#pragma once

// Hilbert-space primitives: pure states, orthonormal bases, anchor-ordered
// projective measurements, Born probabilities, Haar sampling and the Bloch map.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ontic/random.hpp"

namespace ontic {

using Complex = std::complex<double>;

/// Tolerance for algebraic identities (normalization, orthogonality, ties).
inline constexpr double kAlgebraicTol = 1e-12;
/// Tolerance for quantities accumulated through arithmetic.
inline constexpr double kArithmeticTol = 1e-10;

/// Unit vector in C^d, identified up to global phase.
class PureState {
 public:
  /// Throws std::invalid_argument if empty or not normalized within 1e-12.
  explicit PureState(std::vector<Complex> amplitudes);

  /// Rescales to unit norm first. Throws on a zero vector.
  static PureState normalized(std::vector<Complex> amplitudes);

  /// Computational basis vector |k> in dimension d.
  static PureState basis_state(std::size_t d, std::size_t k);

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  /// Same ray with the first nonzero amplitude made real-positive.
  PureState canonical() const;

  /// Equality up to global phase: |<a|b>|^2 >= 1 - 1e-12.
  bool same_ray(const PureState& other) const;

 private:
  std::vector<Complex> amplitudes_;
};

/// <a|b>. Throws std::invalid_argument on dimension mismatch.
Complex inner(const PureState& a, const PureState& b);

/// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);

/// d mutually orthonormal states, in no particular order.
class Basis {
 public:
  /// Throws std::invalid_argument unless |<s_j|s_k>|^2 <= 1e-12 for j != k
  /// and there are exactly dim() states.
  explicit Basis(std::vector<PureState> states);

  static Basis computational(std::size_t d);

  std::size_t dim() const { return states_.size(); }
  const std::vector<PureState>& states() const { return states_; }
  const PureState& operator[](std::size_t k) const { return states_[k]; }

 private:
  std::vector<PureState> states_;
};

/// Projective measurement with outcomes sorted by non-increasing weight on the
/// anchor state. source_index[k] is the position of outcome k in the basis the
/// measurement was built from.
class OrderedMeasurement {
 public:
  std::size_t dim() const { return outcomes_.size(); }
  const std::vector<PureState>& outcomes() const { return outcomes_; }
  const PureState& operator[](std::size_t k) const { return outcomes_[k]; }
  const PureState& anchor() const { return anchor_; }
  const std::vector<std::size_t>& source_index() const { return source_index_; }

  /// The outcomes as an unordered basis.
  Basis basis() const { return Basis(outcomes_); }

 private:
  friend OrderedMeasurement order_for_anchor(const Basis& basis, const PureState& anchor);
  friend OrderedMeasurement reorder_for_anchor(const OrderedMeasurement& measurement,
                                               const PureState& anchor);
  OrderedMeasurement(std::vector<PureState> outcomes, PureState anchor,
                     std::vector<std::size_t> source_index)
      : outcomes_(std::move(outcomes)),
        anchor_(std::move(anchor)),
        source_index_(std::move(source_index)) {}

  std::vector<PureState> outcomes_;
  PureState anchor_;
  std::vector<std::size_t> source_index_;
};

/// Sorts the basis by |<phi|anchor>|^2, largest first. Outcomes whose weights
/// agree within 1e-12 keep their input order, so the result is idempotent.
OrderedMeasurement order_for_anchor(const Basis& basis, const PureState& anchor);

/// Re-sorts an existing measurement for another anchor. source_index of the
/// result refers to positions in `measurement`, not to its original basis.
OrderedMeasurement reorder_for_anchor(const OrderedMeasurement& measurement, const PureState& anchor);

/// Entry k is |<phi_k|psi>|^2.
std::vector<double> born_probabilities(const PureState& psi, const OrderedMeasurement& measurement);
std::vector<double> born_probabilities(const PureState& psi, const Basis& basis);

/// Haar-distributed (Fubini-Study uniform) pure state.
PureState haar_random(std::size_t d, Rng& rng);

/// Haar-random orthonormal basis (columns of a Haar unitary).
Basis random_measurement(std::size_t d, Rng& rng);

/// Orthonormal basis whose first element is `first`, completed by
/// Gram-Schmidt over the computational vectors.
Basis complete_basis(const PureState& first);

/// Point on the Bloch sphere; qubits only.
struct BlochVector {
  double polar = 0.0;    // [0, pi]
  double azimuth = 0.0;  // [0, 2 pi)
};

/// Throws std::invalid_argument unless psi.dim() == 2.
BlochVector to_bloch(const PureState& psi);
PureState from_bloch(const BlochVector& bloch);

}  // namespace ontic
