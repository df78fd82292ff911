#pragma once

// Verification harness: Monte Carlo and exact Born-rule certification,
// forced-outcome region checks, Monte Carlo overlap estimation and the
// psi-ontic / psi-epistemic classifier.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ontic/model.hpp"

namespace ontic {

/// Trials are processed in chunks of this size, each with its own stream
/// derive_seed(seed, chunk), so the result does not depend on worker count.
inline constexpr std::uint64_t kTrialChunk = 1 << 16;

/// Born targets below this are treated as impossible outcomes.
inline constexpr double kImpossibleProbability = 1e-12;

/// p-value threshold for a passing trial report.
inline constexpr double kPassPValue = 1e-3;

struct GoodnessOfFit {
  double chi_squared = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
  std::uint64_t impossible_observations = 0;
};

/// Pearson chi-squared of observed counts against target probabilities.
/// Outcomes with target < 1e-12 are left out and their counts reported as
/// impossible observations; categories with expected count < 5 are pooled.
GoodnessOfFit pearson_chi_squared(const std::vector<std::uint64_t>& counts,
                                  const std::vector<double>& target);

/// 1/2 sum |p - q|.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

struct TrialReport {
  std::string model;
  std::string layout;
  std::string region_distribution;
  std::size_t d = 0;
  PureState psi;
  OrderedMeasurement measurement;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;
  std::vector<double> empirical;
  std::vector<double> target;
  double tv_distance = 0.0;
  GoodnessOfFit fit;
  bool pass = false;
};

struct TrialOptions {
  unsigned workers = 1;
  /// When set, receives the outcome label of every trial, in trial order.
  std::vector<std::uint32_t>* outcome_log = nullptr;
};

/// Samples n ontic states from model.prepare(psi), applies the model's
/// response and tallies outcomes in `measurement`'s labels. Pass iff no
/// impossible outcome occurred and p >= 1e-3. Throws std::invalid_argument
/// for n < 1000 or mismatched dimensions.
TrialReport run_born_trials(const Model& model, const PureState& psi, const OrderedMeasurement& measurement,
                            std::uint64_t n, std::uint64_t seed, const TrialOptions& options = {});

/// Largest |analytic outcome mass - Born probability| over outcomes.
double exact_born_deviation(const Model& model, const PureState& psi, const OrderedMeasurement& measurement);

bool exact_born_check(const Model& model, const PureState& psi, const OrderedMeasurement& measurement,
                      double tolerance = 1e-9);

struct RegionFailure {
  std::size_t state_index = 0;
  std::size_t measurement_index = 0;
  std::uint64_t state_seed = 0;
  std::uint64_t measurement_seed = 0;
  std::size_t expected = 0;
  std::size_t observed = 0;
};

struct RegionCheckOptions {
  /// Restrict sampling to one region kind (e.g. QubitCap1 for E1).
  std::optional<RegionKind> region;
  /// Every n-th state sits at F = (d-1)/d + 1e-9; 0 disables.
  std::size_t boundary_every = 10;
  /// Test hook: corrupt the response for this (state, measurement) pair.
  std::optional<std::pair<std::size_t, std::size_t>> inject_failure;
  unsigned workers = 1;
};

struct PropertyReport {
  std::string model;
  std::string region_filter;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  std::size_t n_states = 0;
  std::size_t n_measurements = 0;
  std::size_t boundary_states = 0;
  std::uint64_t checks = 0;
  std::uint64_t failure_count = 0;
  /// First failures in (state, measurement) order, at most 20.
  std::vector<RegionFailure> failures;
  bool pass() const { return failure_count == 0; }
};

/// Draws n_states ontic states from the model's forced-outcome regions and
/// n_measurements random ordered measurements, and checks every pair yields
/// the region's forced outcome. State i uses seed derive_seed(seed, i);
/// measurement j uses derive_seed(~seed, j). Throws std::invalid_argument for
/// the unmodified Bell model or zero counts.
PropertyReport check_region_constancy(const Model& model, std::size_t n_states, std::size_t n_measurements,
                                      std::uint64_t seed, const RegionCheckOptions& options = {});

struct OverlapEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t n = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo estimate of overlap_measure(e1, e2): draws from e1 and accepts
/// with probability min(1, p2/p1), the density ratio evaluated from support
/// membership of the symbolic components. 99% Clopper-Pearson interval.
/// Throws std::invalid_argument for n < 10^4 or mixed dimensions.
OverlapEstimate estimate_overlap_mc(const EpistemicState& e1, const EpistemicState& e2, std::uint64_t n,
                                    std::uint64_t seed, const RegionOracle& regions = cap_regions());

struct OverlapWitness {
  std::size_t first = 0;
  std::size_t second = 0;
  PureState psi1;
  PureState psi2;
  double overlap = 0.0;
};

struct EpistemicityVerdict {
  std::string model;
  bool epistemic = false;
  std::size_t states_tested = 0;
  std::size_t pairs_tested = 0;
  double threshold = 0.0;
  std::optional<OverlapWitness> witness;
};

/// psi-epistemic relative to `states` iff some pair of distinct states has
/// overlap_measure > threshold; the witness is the pair of largest overlap.
/// Throws std::invalid_argument for fewer than two states.
EpistemicityVerdict classify_epistemicity(const Model& model, const std::vector<PureState>& states,
                                          double threshold = 0.0);

}  // namespace ontic
