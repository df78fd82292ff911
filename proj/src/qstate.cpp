#include "ontic/qstate.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ontic {
namespace {

double norm_squared(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return s;
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

// Modified Gram-Schmidt with one reorthogonalization pass. Returns false if
// the candidate is (numerically) in the span of the accepted vectors.
bool orthonormalize_against(std::vector<Complex>& v, const std::vector<PureState>& accepted) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : accepted) {
      Complex proj{0.0, 0.0};
      for (std::size_t i = 0; i < v.size(); ++i) proj += std::conj(q[i]) * v[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * q[i];
    }
  }
  const double n = std::sqrt(norm_squared(v));
  if (n < 1e-8) return false;
  for (auto& a : v) a /= n;
  return true;
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw std::invalid_argument("PureState: dimension must be >= 1");
  const double n = norm_squared(amplitudes_);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kAlgebraicTol) {
    throw std::invalid_argument("PureState: amplitudes not normalized (norm^2 = " +
                                std::to_string(n) + ")");
  }
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
  const double n = std::sqrt(norm_squared(amplitudes));
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("PureState: zero vector");
  for (auto& a : amplitudes) a /= n;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis_state(std::size_t d, std::size_t k) {
  if (k >= d) throw std::invalid_argument("PureState::basis_state: index out of range");
  std::vector<Complex> v(d);
  v[k] = 1.0;
  return PureState(std::move(v));
}

PureState PureState::canonical() const {
  std::size_t first = 0;
  while (first < amplitudes_.size() && std::abs(amplitudes_[first]) < kAlgebraicTol) ++first;
  if (first == amplitudes_.size()) return *this;
  const Complex phase = std::conj(amplitudes_[first]) / std::abs(amplitudes_[first]);
  std::vector<Complex> v(amplitudes_);
  for (auto& a : v) a *= phase;
  v[first] = std::abs(amplitudes_[first]);
  return PureState::normalized(std::move(v));
}

bool PureState::same_ray(const PureState& other) const {
  return dim() == other.dim() && fidelity(*this, other) >= 1.0 - kAlgebraicTol;
}

Complex inner(const PureState& a, const PureState& b) {
  require_same_dim(a.dim(), b.dim(), "inner");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double fidelity(const PureState& a, const PureState& b) { return std::norm(inner(a, b)); }

Basis::Basis(std::vector<PureState> states) : states_(std::move(states)) {
  if (states_.empty()) throw std::invalid_argument("Basis: empty");
  const std::size_t d = states_.front().dim();
  if (states_.size() != d) {
    throw std::invalid_argument("Basis: expected " + std::to_string(d) + " states, got " +
                                std::to_string(states_.size()));
  }
  for (std::size_t j = 0; j < d; ++j) {
    require_same_dim(states_[j].dim(), d, "Basis");
    for (std::size_t k = j + 1; k < d; ++k) {
      if (fidelity(states_[j], states_[k]) > kAlgebraicTol) {
        throw std::invalid_argument("Basis: states " + std::to_string(j) + " and " +
                                    std::to_string(k) + " are not orthogonal");
      }
    }
  }
}

Basis Basis::computational(std::size_t d) {
  std::vector<PureState> states;
  states.reserve(d);
  for (std::size_t k = 0; k < d; ++k) states.push_back(PureState::basis_state(d, k));
  return Basis(std::move(states));
}

namespace {

// Insertion sort by anchor weight, largest first. An outcome only overtakes
// its predecessor when heavier by more than the tie tolerance.
std::vector<std::size_t> anchor_order(const std::vector<PureState>& states, const PureState& anchor) {
  const std::size_t d = states.size();
  std::vector<double> weight(d);
  for (std::size_t k = 0; k < d; ++k) weight[k] = fidelity(states[k], anchor);

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 1; i < d; ++i) {
    const std::size_t cur = order[i];
    std::size_t j = i;
    while (j > 0 && weight[cur] > weight[order[j - 1]] + kAlgebraicTol) {
      order[j] = order[j - 1];
      --j;
    }
    order[j] = cur;
  }
  return order;
}

}  // namespace

OrderedMeasurement order_for_anchor(const Basis& basis, const PureState& anchor) {
  require_same_dim(basis.dim(), anchor.dim(), "order_for_anchor");
  auto order = anchor_order(basis.states(), anchor);
  std::vector<PureState> outcomes;
  outcomes.reserve(order.size());
  for (auto idx : order) outcomes.push_back(basis[idx]);
  return OrderedMeasurement(std::move(outcomes), anchor, std::move(order));
}

OrderedMeasurement reorder_for_anchor(const OrderedMeasurement& measurement, const PureState& anchor) {
  require_same_dim(measurement.dim(), anchor.dim(), "reorder_for_anchor");
  auto order = anchor_order(measurement.outcomes(), anchor);
  std::vector<PureState> outcomes;
  outcomes.reserve(order.size());
  for (auto idx : order) outcomes.push_back(measurement[idx]);
  return OrderedMeasurement(std::move(outcomes), anchor, std::move(order));
}

std::vector<double> born_probabilities(const PureState& psi, const OrderedMeasurement& measurement) {
  require_same_dim(psi.dim(), measurement.dim(), "born_probabilities");
  std::vector<double> p(measurement.dim());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = fidelity(measurement[k], psi);
  return p;
}

std::vector<double> born_probabilities(const PureState& psi, const Basis& basis) {
  require_same_dim(psi.dim(), basis.dim(), "born_probabilities");
  std::vector<double> p(basis.dim());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = fidelity(basis[k], psi);
  return p;
}

PureState haar_random(std::size_t d, Rng& rng) {
  if (d == 0) throw std::invalid_argument("haar_random: d must be >= 1");
  std::vector<Complex> v(d);
  for (auto& a : v) {
    const double re = rng.normal();
    a = Complex{re, rng.normal()};
  }
  return PureState::normalized(std::move(v));
}

Basis random_measurement(std::size_t d, Rng& rng) {
  if (d == 0) throw std::invalid_argument("random_measurement: d must be >= 1");
  std::vector<PureState> states;
  states.reserve(d);
  while (states.size() < d) {
    std::vector<Complex> v(d);
    for (auto& a : v) {
      const double re = rng.normal();
      a = Complex{re, rng.normal()};
    }
    if (orthonormalize_against(v, states)) states.emplace_back(std::move(v));
  }
  return Basis(std::move(states));
}

Basis complete_basis(const PureState& first) {
  const std::size_t d = first.dim();
  std::vector<PureState> states{first};
  for (std::size_t k = 0; k < d && states.size() < d; ++k) {
    std::vector<Complex> v(d);
    v[k] = 1.0;
    if (orthonormalize_against(v, states)) states.emplace_back(std::move(v));
  }
  return Basis(std::move(states));
}

BlochVector to_bloch(const PureState& psi) {
  if (psi.dim() != 2) throw std::invalid_argument("to_bloch: qubit state required (d = 2)");
  const double polar = 2.0 * std::atan2(std::abs(psi[1]), std::abs(psi[0]));
  double azimuth = 0.0;
  if (std::abs(psi[0]) > kAlgebraicTol && std::abs(psi[1]) > kAlgebraicTol) {
    azimuth = std::arg(psi[1]) - std::arg(psi[0]);
    azimuth = std::fmod(azimuth, 2.0 * std::numbers::pi);
    if (azimuth < 0.0) azimuth += 2.0 * std::numbers::pi;
    if (azimuth >= 2.0 * std::numbers::pi) azimuth = 0.0;
  }
  return {polar, azimuth};
}

PureState from_bloch(const BlochVector& bloch) {
  const double c = std::cos(bloch.polar / 2.0);
  const double s = std::sin(bloch.polar / 2.0);
  return PureState::normalized({Complex{c, 0.0}, std::polar(s, bloch.azimuth)});
}

}  // namespace ontic
