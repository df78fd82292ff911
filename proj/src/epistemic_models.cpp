#include "ontic/epistemic_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ontic {
namespace {

// Fidelities within kAlgebraicTol of (d-1)/d count as on the boundary, so a
// state written as exactly on it (e.g. the qubit equator) stays outside.
double cap_threshold(std::size_t d) {
  return static_cast<double>(d - 1) / static_cast<double>(d) + kAlgebraicTol;
}

void require_qubit(std::size_t d) {
  if (d != 2) throw std::invalid_argument("qubit-hemisphere model requires d = 2");
}

// Largest 1 - F the distribution puts mass on.
double max_depth(std::size_t d, RegionDistribution distribution) {
  const double full = 1.0 / static_cast<double>(d);
  return distribution == RegionDistribution::CoreCap ? 0.5 * full : full;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

double z_from_fidelity(double anchor_fidelity, std::size_t d) {
  const double f = std::clamp(anchor_fidelity, 0.0, 1.0);
  if (d == 0) throw std::invalid_argument("z: d must be >= 1");
  if (f <= cap_threshold(d)) return 0.0;
  const double dd = static_cast<double>(d);
  // (sqrt F - sqrt((d-1)(1-F)))^2 / d, rewritten to avoid cancellation.
  const double num = dd * f - (dd - 1.0);
  const double den = std::sqrt(f) + std::sqrt((dd - 1.0) * (1.0 - f));
  return num * num / (dd * den * den);
}

ZValue z_closed_form(const PureState& chi, const PureState& anchor) {
  const double f = fidelity(anchor, chi);
  return {z_from_fidelity(f, chi.dim()), f};
}

ZOracleResult z_oracle(const PureState& chi, const PureState& anchor, std::size_t budget, Rng& rng) {
  if (budget < 1000) throw std::invalid_argument("z_oracle: budget must be >= 1000");
  const std::size_t d = chi.dim();
  const double f = fidelity(anchor, chi);
  const double min_anchor_weight = 1.0 / static_cast<double>(d);

  ZOracleResult result;
  if (d == 1) {
    result.span_minimum = result.full_space_minimum = 1.0;
    result.z = {1.0, f};
    return result;
  }

  // Unit vector completing span{anchor, chi}.
  const Complex c = inner(anchor, chi);
  std::vector<Complex> perp(d);
  double r2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    perp[i] = chi[i] - c * anchor[i];
    r2 += std::norm(perp[i]);
  }
  const PureState perp_state =
      r2 < 1e-24 ? complete_basis(anchor)[1] : PureState::normalized(std::move(perp));

  auto objective = [&](double t, double beta) {
    std::vector<Complex> phi(d);
    const Complex rot = std::polar(std::sin(t), beta);
    for (std::size_t i = 0; i < d; ++i) phi[i] = std::cos(t) * anchor[i] + rot * perp_state[i];
    return fidelity(PureState::normalized(std::move(phi)), chi);
  };

  // Feasible directions in the span: cos^2 t >= 1/d.
  const double t_max = std::acos(std::sqrt(min_anchor_weight));
  constexpr std::size_t n_beta = 16;
  const std::size_t n_t = std::max<std::size_t>(budget / n_beta, 2);
  double best = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  double best_beta = 0.0;
  for (std::size_t i = 0; i < n_t; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(n_t - 1);
    for (std::size_t j = 0; j < n_beta; ++j) {
      const double beta = 2.0 * std::numbers::pi * static_cast<double>(j) / n_beta;
      const double v = objective(t, beta);
      if (v < best) {
        best = v;
        best_t = t;
        best_beta = beta;
      }
    }
  }
  // Zoom in on the best cell.
  double width_t = t_max / static_cast<double>(n_t - 1);
  double width_beta = 2.0 * std::numbers::pi / n_beta;
  for (int round = 0; round < 60; ++round) {
    const double t0 = best_t;
    const double b0 = best_beta;
    for (int i = -4; i <= 4; ++i) {
      const double t = std::clamp(t0 + width_t * i / 4.0, 0.0, t_max);
      for (int j = -4; j <= 4; ++j) {
        const double beta = b0 + width_beta * j / 4.0;
        const double v = objective(t, beta);
        if (v < best) {
          best = v;
          best_t = t;
          best_beta = beta;
        }
      }
    }
    width_t *= 0.5;
    width_beta *= 0.5;
  }
  result.span_minimum = best;

  // Full-space cross-check.
  double full = fidelity(anchor, chi);  // phi = anchor is always feasible
  std::size_t accepted = 0;
  for (std::size_t tries = 0; accepted < budget && tries < 100 * budget; ++tries) {
    const PureState phi = haar_random(d, rng);
    if (fidelity(phi, anchor) < min_anchor_weight) continue;
    ++accepted;
    full = std::min(full, fidelity(phi, chi));
  }
  result.full_space_minimum = full;
  result.z = {std::min(result.span_minimum, result.full_space_minimum), f};
  return result;
}

bool in_region(const OnticState& lambda, const RegionDescriptor& region) {
  if (lambda.dim() != region.dim()) throw std::invalid_argument("in_region: dimension mismatch");
  const double f = fidelity(region.anchor(), lambda.direction());
  if (f <= cap_threshold(region.dim())) return false;
  const double z = z_from_fidelity(f, region.dim());
  // 1 - x is exact near x = 1; 1 - z is not when z is tiny.
  return region.slab_at_top() ? 1.0 - lambda.x() < z : lambda.x() < z;
}

std::optional<RegionDescriptor> region_of(const OnticState& lambda, const ModelVariant& variant) {
  const std::size_t d = lambda.dim();
  return std::visit(
      overloaded{
          [&](const QubitHemisphere&) -> std::optional<RegionDescriptor> {
            require_qubit(d);
            for (auto region : {RegionDescriptor::qubit_cap0(), RegionDescriptor::qubit_cap1()}) {
              if (in_region(lambda, region)) return region;
            }
            return std::nullopt;
          },
          [&](const GeneralCap& v) -> std::optional<RegionDescriptor> {
            auto region = RegionDescriptor::general_cap(v.anchor);
            if (in_region(lambda, region)) return region;
            return std::nullopt;
          },
          [&](const BasisCap& v) -> std::optional<RegionDescriptor> {
            for (std::size_t j = 0; j < v.basis.dim(); ++j) {
              if (fidelity(v.basis[j], lambda.direction()) > cap_threshold(d)) {
                auto region = RegionDescriptor::basis_cap(v.basis, j);
                if (in_region(lambda, region)) return region;
                return std::nullopt;
              }
            }
            return std::nullopt;
          },
      },
      variant);
}

bool in_region(const OnticState& lambda, const ModelVariant& variant) {
  return region_of(lambda, variant).has_value();
}

const PureState& ordering_anchor(const PureState& direction, const ModelVariant& variant) {
  static const PureState north = PureState::basis_state(2, 0);
  return std::visit(overloaded{
                        [&](const QubitHemisphere&) -> const PureState& {
                          require_qubit(direction.dim());
                          return north;
                        },
                        [&](const GeneralCap& v) -> const PureState& { return v.anchor; },
                        [&](const BasisCap& v) -> const PureState& {
                          const double thr = cap_threshold(direction.dim());
                          for (std::size_t j = 0; j < v.basis.dim(); ++j) {
                            if (fidelity(v.basis[j], direction) > thr) return v.basis[j];
                          }
                          return v.basis[0];
                        },
                    },
                    variant);
}

EpistemicState prepare_modified(const PureState& psi, const ModelVariant& variant,
                                RegionDistribution distribution) {
  const std::size_t d = psi.dim();
  auto bottom_slab = [&](const RegionDescriptor& region, double z) {
    return EpistemicState(d, {{1.0 - z, DeltaLine{psi, z, 1.0}},
                              {z, RegionUniform{region, distribution}}});
  };
  const double thr = cap_threshold(d);

  if (std::holds_alternative<QubitHemisphere>(variant)) {
    require_qubit(d);
    const double f0 = std::norm(psi[0]);
    const double f1 = std::norm(psi[1]);
    if (f0 > thr) return bottom_slab(RegionDescriptor::qubit_cap0(), z_from_fidelity(f0, 2));
    if (f1 > thr) {
      const double z = z_from_fidelity(f1, 2);
      return EpistemicState(d, {{1.0 - z, DeltaLine{psi, 0.0, 1.0 - z}},
                                {z, RegionUniform{RegionDescriptor::qubit_cap1(), distribution}}});
    }
    return prepare_bell(psi);
  }
  if (const auto* cap = std::get_if<GeneralCap>(&variant)) {
    if (cap->anchor.dim() != d) throw std::invalid_argument("prepare_modified: dimension mismatch");
    const double f = fidelity(cap->anchor, psi);
    if (f > thr) return bottom_slab(RegionDescriptor::general_cap(cap->anchor), z_from_fidelity(f, d));
    return prepare_bell(psi);
  }
  const auto& basis = std::get<BasisCap>(variant).basis;
  if (basis.dim() != d) throw std::invalid_argument("prepare_modified: dimension mismatch");
  for (std::size_t j = 0; j < d; ++j) {
    const double f = fidelity(basis[j], psi);
    if (f > thr) return bottom_slab(RegionDescriptor::basis_cap(basis, j), z_from_fidelity(f, d));
  }
  return prepare_bell(psi);
}

PureState cap_direction(const RegionDescriptor& region, double depth, Rng& rng) {
  const std::size_t d = region.dim();
  const Basis& frame = region.frame();
  if (d == 1) return frame[0];
  std::vector<Complex> tail(d - 1);
  double tail_norm = 0.0;
  for (auto& a : tail) {
    const double re = rng.normal();
    a = Complex{re, rng.normal()};
    tail_norm += std::norm(a);
  }
  const double scale = std::sqrt(depth / tail_norm);
  const double head = std::sqrt(1.0 - depth);
  std::vector<Complex> v(d);
  for (std::size_t i = 0; i < d; ++i) {
    v[i] = head * frame[0][i];
    for (std::size_t m = 0; m + 1 < d; ++m) v[i] += scale * tail[m] * frame[m + 1][i];
  }
  return PureState::normalized(std::move(v));
}

OnticState sample_region(const RegionDescriptor& region, Rng& rng, RegionDistribution distribution) {
  const std::size_t d = region.dim();
  if (d == 1) return OnticState(region.anchor(), rng.uniform());

  const double max_u = max_depth(d, distribution);
  const double thr = cap_threshold(d);
  const double dd = static_cast<double>(d);
  for (;;) {
    // 1 - F has density proportional to (1 - F)^{d-2} under Fubini-Study.
    const double u = max_u * std::pow(rng.uniform(), 1.0 / (dd - 1.0));
    PureState direction = cap_direction(region, u, rng);
    // Recompute F from the realized vector so membership tests agree exactly.
    const double f = fidelity(region.anchor(), direction);
    if (f <= thr || 1.0 - f >= max_u) continue;
    const double z = z_from_fidelity(f, d);
    if (rng.uniform() >= dd * z) continue;
    const double offset = z * rng.uniform();
    const double x = region.slab_at_top() ? 1.0 - offset : offset;
    OnticState lambda(std::move(direction), x);
    if (!in_region(lambda, region)) continue;
    return lambda;
  }
}

OnticState sample_region(const ModelVariant& variant, std::size_t d, Rng& rng,
                         RegionDistribution distribution) {
  return std::visit(
      overloaded{
          [&](const QubitHemisphere&) {
            require_qubit(d);
            const auto region =
                rng.uniform() < 0.5 ? RegionDescriptor::qubit_cap0() : RegionDescriptor::qubit_cap1();
            return sample_region(region, rng, distribution);
          },
          [&](const GeneralCap& v) {
            return sample_region(RegionDescriptor::general_cap(v.anchor), rng, distribution);
          },
          [&](const BasisCap& v) {
            const auto j = static_cast<std::size_t>(rng.below(v.basis.dim()));
            return sample_region(RegionDescriptor::basis_cap(v.basis, j), rng, distribution);
          },
      },
      variant);
}

bool outcome0_positivity_check(const PureState& direction, const PureState& anchor,
                               const OrderedMeasurement& measurement) {
  if (!measurement.anchor().same_ray(anchor)) {
    throw std::invalid_argument("outcome0_positivity_check: measurement not ordered for this anchor");
  }
  const ZValue z = z_closed_form(direction, anchor);
  if (z.anchor_fidelity <= cap_threshold(direction.dim())) return true;
  const double w0 = fidelity(measurement[0], direction);
  return w0 > 0.0 && w0 >= z.value - kAlgebraicTol;
}

OnticState CapRegions::sample(const RegionUniform& component, Rng& rng) const {
  return sample_region(component.region, rng, component.distribution);
}

bool CapRegions::contains(const RegionUniform& component, const OnticState& lambda) const {
  if (!in_region(lambda, component.region)) return false;
  if (component.distribution == RegionDistribution::Uniform) return true;
  const double f = fidelity(component.region.anchor(), lambda.direction());
  return 1.0 - f < max_depth(component.region.dim(), component.distribution);
}

const CapRegions& cap_regions() {
  static const CapRegions instance;
  return instance;
}

}  // namespace ontic
