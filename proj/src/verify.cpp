#include "ontic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace ontic {
namespace {

// Runs body(i) for i in [0, count) on up to `workers` threads, round-robin.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  const unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (w <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0u);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (unsigned t = 0; t < w; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += w) body(i, t);
    });
  }
  for (auto& th : threads) th.join();
}

}  // namespace

GoodnessOfFit pearson_chi_squared(const std::vector<std::uint64_t>& counts, const std::vector<double>& target) {
  if (counts.size() != target.size()) throw std::invalid_argument("pearson_chi_squared: size mismatch");
  GoodnessOfFit fit;
  std::uint64_t n = 0;
  for (auto c : counts) n += c;

  struct Category {
    double observed;
    double expected;
  };
  std::vector<Category> kept;
  Category pooled{0.0, 0.0};
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (target[k] < kImpossibleProbability) {
      fit.impossible_observations += counts[k];
      continue;
    }
    const double expected = target[k] * static_cast<double>(n);
    if (expected >= 5.0) {
      kept.push_back({static_cast<double>(counts[k]), expected});
    } else {
      pooled.observed += static_cast<double>(counts[k]);
      pooled.expected += expected;
    }
  }
  if (pooled.expected > 0.0) {
    if (pooled.expected >= 5.0 || kept.empty()) {
      kept.push_back(pooled);
    } else {
      auto smallest = std::min_element(kept.begin(), kept.end(),
                                       [](const auto& a, const auto& b) { return a.expected < b.expected; });
      smallest->observed += pooled.observed;
      smallest->expected += pooled.expected;
    }
  }
  for (const auto& c : kept) fit.chi_squared += (c.observed - c.expected) * (c.observed - c.expected) / c.expected;
  fit.degrees_of_freedom = kept.empty() ? 0 : kept.size() - 1;
  if (fit.degrees_of_freedom == 0) {
    fit.p_value = 1.0;
  } else {
    const boost::math::chi_squared dist(static_cast<double>(fit.degrees_of_freedom));
    fit.p_value = boost::math::cdf(boost::math::complement(dist, fit.chi_squared));
  }
  return fit;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: size mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) s += std::abs(p[k] - q[k]);
  return 0.5 * s;
}

TrialReport run_born_trials(const Model& model, const PureState& psi, const OrderedMeasurement& measurement,
                            std::uint64_t n, std::uint64_t seed, const TrialOptions& options) {
  if (n < 1000) throw std::invalid_argument("run_born_trials: N must be >= 1000");
  if (psi.dim() != model.dim() || measurement.dim() != model.dim()) {
    throw std::invalid_argument("run_born_trials: dimension does not match model");
  }
  const std::size_t d = model.dim();
  const EpistemicState e = model.prepare(psi);
  const std::size_t chunks = static_cast<std::size_t>((n + kTrialChunk - 1) / kTrialChunk);
  if (options.outcome_log != nullptr) options.outcome_log->assign(n, 0);

  std::vector<std::vector<std::uint64_t>> chunk_counts(chunks, std::vector<std::uint64_t>(d, 0));
  parallel_for(chunks, options.workers, [&](std::size_t c, unsigned) {
    Rng rng(derive_seed(seed, c));
    const std::uint64_t begin = c * kTrialChunk;
    const std::uint64_t end = std::min<std::uint64_t>(n, begin + kTrialChunk);
    auto& counts = chunk_counts[c];
    for (std::uint64_t t = begin; t < end; ++t) {
      const OnticState lambda = model.sample(e, rng);
      const std::size_t k = model.respond(lambda, measurement).value;
      ++counts[k];
      if (options.outcome_log != nullptr) (*options.outcome_log)[t] = static_cast<std::uint32_t>(k);
    }
  });

  std::vector<std::uint64_t> counts(d, 0);
  for (const auto& cc : chunk_counts) {
    for (std::size_t k = 0; k < d; ++k) counts[k] += cc[k];
  }
  std::vector<double> empirical(d);
  for (std::size_t k = 0; k < d; ++k) empirical[k] = static_cast<double>(counts[k]) / static_cast<double>(n);
  auto target = born_probabilities(psi, measurement);
  const auto fit = pearson_chi_squared(counts, target);
  const double tv = tv_distance(empirical, target);
  const bool pass = fit.impossible_observations == 0 && fit.p_value >= kPassPValue;
  return TrialReport{model.name(),
                     model.layout_tag(),
                     std::string(to_string(model.region_distribution())),
                     d,
                     psi,
                     measurement,
                     n,
                     seed,
                     std::move(counts),
                     std::move(empirical),
                     std::move(target),
                     tv,
                     fit,
                     pass};
}

double exact_born_deviation(const Model& model, const PureState& psi, const OrderedMeasurement& measurement) {
  const auto mass = model.outcome_masses(psi, measurement);
  const auto born = born_probabilities(psi, measurement);
  double worst = 0.0;
  for (std::size_t k = 0; k < mass.size(); ++k) worst = std::max(worst, std::abs(mass[k] - born[k]));
  return worst;
}

bool exact_born_check(const Model& model, const PureState& psi, const OrderedMeasurement& measurement,
                      double tolerance) {
  return exact_born_deviation(model, psi, measurement) <= tolerance;
}

namespace {

RegionDescriptor pick_region(const Model& model, const RegionCheckOptions& options, Rng& rng) {
  const auto& variant = *model.variant();
  const std::size_t d = model.dim();
  if (std::holds_alternative<QubitHemisphere>(variant)) {
    RegionKind kind = options.region.value_or(rng.uniform() < 0.5 ? RegionKind::QubitCap0 : RegionKind::QubitCap1);
    if (kind == RegionKind::QubitCap0) return RegionDescriptor::qubit_cap0();
    if (kind == RegionKind::QubitCap1) return RegionDescriptor::qubit_cap1();
    throw std::invalid_argument("region-check: qubit-hemisphere regions are e0 and e1");
  }
  if (options.region && *options.region != RegionKind::GeneralCap && *options.region != RegionKind::BasisCap) {
    throw std::invalid_argument("region-check: e0/e1 filters apply to qubit-hemisphere only");
  }
  if (const auto* cap = std::get_if<GeneralCap>(&variant)) return RegionDescriptor::general_cap(cap->anchor);
  const auto& basis = std::get<BasisCap>(variant).basis;
  return RegionDescriptor::basis_cap(basis, static_cast<std::size_t>(rng.below(d)));
}

OnticState boundary_state(const RegionDescriptor& region, Rng& rng) {
  const std::size_t d = region.dim();
  const double f = static_cast<double>(d - 1) / static_cast<double>(d) + 1e-9;
  for (;;) {
    PureState direction = cap_direction(region, 1.0 - f, rng);
    const double z = z_from_fidelity(fidelity(region.anchor(), direction), d);
    const double offset = z * rng.uniform();
    OnticState lambda(std::move(direction), region.slab_at_top() ? 1.0 - offset : offset);
    if (in_region(lambda, region)) return lambda;
  }
}

}  // namespace

PropertyReport check_region_constancy(const Model& model, std::size_t n_states, std::size_t n_measurements,
                                      std::uint64_t seed, const RegionCheckOptions& options) {
  if (!model.is_modified()) {
    throw std::invalid_argument("region-check: model '" + model.name() + "' has no forced-outcome regions");
  }
  if (n_states == 0 || n_measurements == 0) throw std::invalid_argument("region-check: counts must be >= 1");

  const std::uint64_t measurement_seed_base = ~seed;
  std::vector<OrderedMeasurement> measurements;
  measurements.reserve(n_measurements);
  for (std::size_t j = 0; j < n_measurements; ++j) {
    Rng rng(derive_seed(measurement_seed_base, j));
    measurements.push_back(model.random_ordered_measurement(rng));
  }

  struct StateResult {
    std::uint64_t failures = 0;
    std::vector<RegionFailure> recorded;
  };
  std::vector<StateResult> results(n_states);
  parallel_for(n_states, options.workers, [&](std::size_t i, unsigned) {
    const std::uint64_t state_seed = derive_seed(seed, i);
    Rng rng(state_seed);
    const RegionDescriptor region = pick_region(model, options, rng);
    const bool boundary = options.boundary_every != 0 && i % options.boundary_every == 0;
    const OnticState lambda =
        boundary ? boundary_state(region, rng) : sample_region(region, rng, model.region_distribution());
    auto& out = results[i];
    for (std::size_t j = 0; j < n_measurements; ++j) {
      const std::size_t expected = model.forced_outcome(region, measurements[j]).value;
      std::size_t observed = model.respond(lambda, measurements[j]).value;
      if (options.inject_failure && options.inject_failure->first == i && options.inject_failure->second == j) {
        observed = (observed + 1) % model.dim();
      }
      if (observed != expected) {
        ++out.failures;
        if (out.recorded.size() < 20) {
          out.recorded.push_back({i, j, state_seed, derive_seed(measurement_seed_base, j), expected, observed});
        }
      }
    }
  });

  PropertyReport report;
  report.model = model.name();
  if (options.region) {
    report.region_filter = *options.region == RegionKind::QubitCap1 ? "e1"
                           : *options.region == RegionKind::QubitCap0 ? "e0"
                                                                      : "any";
  } else {
    report.region_filter = "any";
  }
  report.d = model.dim();
  report.seed = seed;
  report.n_states = n_states;
  report.n_measurements = n_measurements;
  report.boundary_states =
      options.boundary_every == 0 ? 0 : (n_states + options.boundary_every - 1) / options.boundary_every;
  report.checks = static_cast<std::uint64_t>(n_states) * n_measurements;
  for (auto& r : results) {
    report.failure_count += r.failures;
    for (auto& f : r.recorded) {
      if (report.failures.size() < 20) report.failures.push_back(f);
    }
  }
  return report;
}

namespace {

// Density ratio p2/p1 at lambda. Delta lines and regions are mutually
// singular, so the ratio is taken within whichever part carries lambda in e1.
double density_ratio(const EpistemicState& e1, const EpistemicState& e2, const OnticState& lambda,
                     const RegionOracle& regions) {
  auto line_density = [&](const EpistemicState& e) {
    double s = 0.0;
    for (const auto& [w, comp] : e.components()) {
      if (const auto* line = std::get_if<DeltaLine>(&comp)) {
        if (support_contains(comp, lambda, regions)) s += w / (line->hi - line->lo);
      }
    }
    return s;
  };
  const double line1 = line_density(e1);
  if (line1 > 0.0) return line_density(e2) / line1;

  double region1 = 0.0;
  double region2 = 0.0;
  for (const auto& [w1, c1] : e1.components()) {
    const auto* r1 = std::get_if<RegionUniform>(&c1);
    if (r1 == nullptr || !regions.contains(*r1, lambda)) continue;
    region1 += w1;
    for (const auto& [w2, c2] : e2.components()) {
      const auto* r2 = std::get_if<RegionUniform>(&c2);
      if (r2 != nullptr && r2->region == r1->region && r2->distribution == r1->distribution) region2 += w2;
    }
  }
  return region1 > 0.0 ? region2 / region1 : 0.0;
}

}  // namespace

OverlapEstimate estimate_overlap_mc(const EpistemicState& e1, const EpistemicState& e2, std::uint64_t n,
                                    std::uint64_t seed, const RegionOracle& regions) {
  if (n < 10000) throw std::invalid_argument("estimate_overlap_mc: N must be >= 10^4");
  if (e1.dim() != e2.dim()) throw std::invalid_argument("estimate_overlap_mc: dimension mismatch");
  Rng rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < n; ++t) {
    const OnticState lambda = sample(e1, rng, regions);
    const double ratio = density_ratio(e1, e2, lambda, regions);
    if (ratio >= 1.0 || (ratio > 0.0 && rng.uniform() < ratio)) ++hits;
  }
  constexpr double alpha = 0.01;
  OverlapEstimate out;
  out.n = n;
  out.hits = hits;
  out.seed = seed;
  out.estimate = static_cast<double>(hits) / static_cast<double>(n);
  const double h = static_cast<double>(hits);
  const double m = static_cast<double>(n - hits);
  out.ci_low = hits == 0 ? 0.0 : boost::math::ibeta_inv(h, m + 1.0, alpha / 2.0);
  out.ci_high = hits == n ? 1.0 : boost::math::ibeta_inv(h + 1.0, m, 1.0 - alpha / 2.0);
  return out;
}

EpistemicityVerdict classify_epistemicity(const Model& model, const std::vector<PureState>& states,
                                          double threshold) {
  if (states.size() < 2) throw std::invalid_argument("classify_epistemicity: need at least 2 states");
  std::vector<EpistemicState> prepared;
  prepared.reserve(states.size());
  for (const auto& s : states) prepared.push_back(model.prepare(s));

  EpistemicityVerdict verdict;
  verdict.model = model.name();
  verdict.states_tested = states.size();
  verdict.threshold = threshold;
  double best = -1.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      if (states[i].same_ray(states[j])) continue;
      ++verdict.pairs_tested;
      const double o = overlap_measure(prepared[i], prepared[j]);
      if (o > best) {
        best = o;
        verdict.witness = OverlapWitness{i, j, states[i], states[j], o};
      }
    }
  }
  verdict.epistemic = verdict.witness.has_value() && verdict.witness->overlap > threshold;
  if (!verdict.epistemic) verdict.witness.reset();
  return verdict;
}

}  // namespace ontic
