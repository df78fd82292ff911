#include "ontic/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ontic/model.hpp"
#include "ontic/serialize.hpp"
#include "ontic/verify.hpp"

namespace ontic::cli {
namespace {

struct RunConfig {
  std::string command;
  std::string model = "bell";
  std::size_t d = 2;
  std::uint64_t n = 0;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out_path;
  std::string format = "json";
  std::string distribution = "fubini-study-uniform";
};

void add_common(CLI::App* sub, RunConfig& cfg, std::uint64_t default_n) {
  cfg.n = default_n;
  sub->add_option("--model", cfg.model, "bell | qubit-hemisphere | general-cap | basis-cap");
  sub->add_option("--d", cfg.d, "Hilbert-space dimension")->check(CLI::Range(2, 64));
  sub->add_option("--n", cfg.n, "Number of trials / samples");
  sub->add_option("--seed", cfg.seed, "Seed for all randomness")->envname("ONTIC_SEED");
  sub->add_option("--workers", cfg.workers, "Worker threads (output does not depend on it)")
      ->check(CLI::Range(1u, 256u));
  sub->add_option("--out", cfg.out_path, "Output file (default: standard output)");
  sub->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--region-distribution", cfg.distribution, "fubini-study-uniform | core-cap")
      ->check(CLI::IsMember({"fubini-study-uniform", "core-cap"}));
}

Model make_model(const RunConfig& cfg) {
  return Model::from_name(cfg.model, cfg.d, region_distribution_from_string(cfg.distribution));
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
}

// A point in the model's cap (or a Haar state for the unmodified model).
PureState cap_state(const Model& model, Rng& rng) {
  const std::size_t d = model.dim();
  if (!model.is_modified() || d == 1) return haar_random(d, rng);
  const auto& variant = *model.variant();
  std::optional<RegionDescriptor> region;
  if (std::holds_alternative<QubitHemisphere>(variant)) {
    region = rng.uniform() < 0.5 ? RegionDescriptor::qubit_cap0() : RegionDescriptor::qubit_cap1();
  } else if (const auto* cap = std::get_if<GeneralCap>(&variant)) {
    region = RegionDescriptor::general_cap(cap->anchor);
  } else {
    const auto& basis = std::get<BasisCap>(variant).basis;
    region = RegionDescriptor::basis_cap(basis, static_cast<std::size_t>(rng.below(d)));
  }
  // 1 - F uniform on (0, 1/d), strictly inside the cap.
  const double depth = (0.02 + 0.96 * rng.uniform()) / static_cast<double>(d);
  return cap_direction(*region, depth, rng);
}

PureState resolve_state(const std::string& spec, const Model& model, Rng& rng) {
  if (spec == "anchor") return model.default_anchor();
  if (spec == "random") return haar_random(model.dim(), rng);
  if (spec == "cap-random") return cap_state(model, rng);
  PureState psi = state_from_json(load_json_file(spec));
  if (psi.dim() != model.dim()) throw std::invalid_argument("state in '" + spec + "' has the wrong dimension");
  return psi;
}

OrderedMeasurement resolve_measurement(const std::string& spec, const Model& model, Rng& rng) {
  if (spec == "random") return model.random_ordered_measurement(rng);
  if (spec == "computational") return order_for_anchor(Basis::computational(model.dim()), model.default_anchor());
  auto m = measurement_from_json(load_json_file(spec));
  if (m.dim() != model.dim()) throw std::invalid_argument("measurement in '" + spec + "' has the wrong dimension");
  return m;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// Writes the payload to --out or to `out`, and the summary to the terminal.
void emit(const RunConfig& cfg, const std::string& payload, const std::string& summary, std::ostream& out,
          std::ostream& err) {
  if (cfg.out_path.empty()) {
    out << payload;
    err << summary;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
  file << payload;
  if (!file) throw std::runtime_error("failed writing '" + cfg.out_path + "'");
  out << summary;
}

int cmd_verify_born(const RunConfig& cfg, const std::string& state_spec, const std::string& measurement_spec,
                    std::size_t configs, const std::string& dump_path, std::ostream& out, std::ostream& err) {
  const Model model = make_model(cfg);
  Json reports = Json::array();
  std::ostringstream csv;
  std::ostringstream summary;
  csv << "config,model,d,N,seed,outcome,count,empirical,target,tv_distance,p_value,exact_deviation,verdict\n";
  std::vector<std::uint32_t> outcome_log;
  std::ofstream dump;
  if (!dump_path.empty()) {
    dump.open(dump_path, std::ios::binary);
    if (!dump) throw std::runtime_error("cannot write '" + dump_path + "'");
    dump << "config,trial,outcome\n";
  }
  bool all_pass = true;
  for (std::size_t c = 0; c < configs; ++c) {
    Rng rng(derive_seed(cfg.seed, 0x10000 + c));
    const PureState psi = resolve_state(state_spec, model, rng);
    const OrderedMeasurement phi = resolve_measurement(measurement_spec, model, rng);
    TrialOptions options{cfg.workers, dump_path.empty() ? nullptr : &outcome_log};
    const auto report = run_born_trials(model, psi, phi, cfg.n, derive_seed(cfg.seed, c), options);
    const double deviation = exact_born_deviation(model, psi, phi);
    const bool exact_pass = deviation <= 1e-9;
    const bool pass = report.pass && exact_pass;
    all_pass = all_pass && pass;

    Json j = to_json(report);
    j["exact_check"] = {{"max_deviation", deviation}, {"tolerance", 1e-9}, {"pass", exact_pass}};
    j["verdict"] = pass ? "pass" : "fail";
    reports.push_back(std::move(j));
    for (std::size_t k = 0; k < model.dim(); ++k) {
      csv << c << ',' << model.name() << ',' << model.dim() << ',' << report.n << ',' << report.seed << ',' << k
          << ',' << report.counts[k] << ',' << fmt(report.empirical[k]) << ',' << fmt(report.target[k]) << ','
          << fmt(report.tv_distance) << ',' << fmt(report.fit.p_value) << ',' << fmt(deviation) << ','
          << (pass ? "pass" : "fail") << '\n';
    }
    for (std::size_t t = 0; t < outcome_log.size(); ++t) dump << c << ',' << t << ',' << outcome_log[t] << '\n';
    summary << "verify-born " << model.name() << " d=" << model.dim() << " N=" << report.n << " config " << c
            << ": tv=" << report.tv_distance << " p=" << report.fit.p_value << " exact-dev=" << deviation << " -> "
            << (pass ? "PASS" : "FAIL") << '\n';
  }
  const Json doc{{"schema", "ontic.verify-born"},
                 {"schema_version", kSchemaVersion},
                 {"seed", cfg.seed},
                 {"reports", std::move(reports)},
                 {"pass", all_pass}};
  emit(cfg, cfg.format == "csv" ? csv.str() : doc.dump(2) + "\n", summary.str(), out, err);
  return all_pass ? 0 : 1;
}

int cmd_witness(const RunConfig& cfg, std::size_t n_states, bool bias_cap, const std::string& state_file,
                double threshold, std::ostream& out, std::ostream& err) {
  const Model model = make_model(cfg);
  std::vector<PureState> states;
  if (!state_file.empty()) {
    const Json j = load_json_file(state_file);
    if (!j.is_array()) throw std::invalid_argument("state file must hold a JSON array of states");
    for (const auto& s : j) states.push_back(state_from_json(s));
  } else {
    Rng rng(derive_seed(cfg.seed, 0));
    for (std::size_t i = 0; i < n_states; ++i) {
      states.push_back(bias_cap ? cap_state(model, rng) : haar_random(model.dim(), rng));
    }
  }
  const auto verdict = classify_epistemicity(model, states, threshold);
  std::ostringstream summary;
  summary << "witness " << model.name() << " d=" << model.dim() << " over " << verdict.states_tested
          << " states: " << (verdict.epistemic ? "psi-epistemic" : "psi-ontic");
  if (verdict.witness) summary << " (pair " << verdict.witness->first << "," << verdict.witness->second
                               << " overlap " << verdict.witness->overlap << ")";
  summary << '\n';
  std::string payload;
  if (cfg.format == "csv") {
    payload = "model,d,states,pairs,verdict,first,second,overlap\n" + model.name() + ',' +
              std::to_string(model.dim()) + ',' + std::to_string(verdict.states_tested) + ',' +
              std::to_string(verdict.pairs_tested) + ',' + (verdict.epistemic ? "psi-epistemic" : "psi-ontic") +
              ',' + (verdict.witness ? std::to_string(verdict.witness->first) : "") + ',' +
              (verdict.witness ? std::to_string(verdict.witness->second) : "") + ',' +
              (verdict.witness ? fmt(verdict.witness->overlap) : "0") + '\n';
  } else {
    Json j = to_json(verdict);
    j["seed"] = cfg.seed;
    j["d"] = model.dim();
    payload = j.dump(2) + "\n";
  }
  emit(cfg, payload, summary.str(), out, err);
  return 0;
}

int cmd_z_table(const RunConfig& cfg, std::size_t d_only, std::size_t grid, std::size_t budget, std::ostream& out,
                std::ostream& err) {
  if (grid < 2) throw std::invalid_argument("--grid must be >= 2");
  std::vector<std::size_t> dims;
  if (d_only != 0) {
    dims.push_back(d_only);
  } else {
    for (std::size_t d = 2; d <= 8; ++d) dims.push_back(d);
  }
  std::ostringstream csv;
  Json rows = Json::array();
  csv << "d,F,z_closed,z_oracle,abs_diff\n";
  double worst = 0.0;
  bool monotone = true;
  for (auto d : dims) {
    if (d < 2) throw std::invalid_argument("z-table requires d >= 2");
    const PureState anchor = PureState::basis_state(d, 0);
    const RegionDescriptor frame = RegionDescriptor::general_cap(anchor);
    std::vector<double> fs;
    for (std::size_t i = 0; i < grid; ++i) fs.push_back(static_cast<double>(i) / static_cast<double>(grid - 1));
    fs.push_back(static_cast<double>(d - 1) / static_cast<double>(d));
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    double previous = -1.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      Rng rng(derive_seed(cfg.seed, d * 1000 + i));
      const PureState chi = cap_direction(frame, 1.0 - fs[i], rng);
      const double closed = z_closed_form(chi, anchor).value;
      const double oracle = z_oracle(chi, anchor, budget, rng).z.value;
      const double diff = std::abs(closed - oracle);
      worst = std::max(worst, diff);
      if (closed < previous) monotone = false;
      previous = closed;
      csv << d << ',' << fmt(fs[i]) << ',' << fmt(closed) << ',' << fmt(oracle) << ',' << fmt(diff) << '\n';
      rows.push_back({{"d", d}, {"F", fs[i]}, {"z_closed", closed}, {"z_oracle", oracle}, {"abs_diff", diff}});
    }
  }
  const bool pass = worst <= 1e-6 && monotone;
  std::ostringstream summary;
  summary << "z-table: max |z_closed - z_oracle| = " << worst << (monotone ? "" : ", z not monotone in F")
          << " -> " << (pass ? "PASS" : "FAIL") << '\n';
  const Json doc{{"schema", "ontic.z-table"}, {"schema_version", kSchemaVersion}, {"seed", cfg.seed},
                 {"rows", std::move(rows)},   {"max_abs_diff", worst},             {"pass", pass}};
  emit(cfg, cfg.format == "json" ? doc.dump(2) + "\n" : csv.str(), summary.str(), out, err);
  return pass ? 0 : 1;
}

int cmd_region_check(const RunConfig& cfg, std::size_t states, std::size_t measurements, const std::string& region,
                     bool inject, std::ostream& out, std::ostream& err) {
  const Model model = make_model(cfg);
  if (states == 0) states = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(cfg.n))));
  if (measurements == 0) measurements = static_cast<std::size_t>((cfg.n + states - 1) / states);
  RegionCheckOptions options;
  options.workers = cfg.workers;
  if (region == "e0") options.region = RegionKind::QubitCap0;
  if (region == "e1") options.region = RegionKind::QubitCap1;
  if (options.region && model.name() != "qubit-hemisphere") {
    throw std::invalid_argument("--region e0/e1 applies to the qubit-hemisphere model only");
  }
  if (inject) options.inject_failure = std::make_pair(std::min<std::size_t>(1, states - 1), std::size_t{0});
  const auto report = check_region_constancy(model, states, measurements, cfg.seed, options);

  std::ostringstream summary;
  summary << "region-check " << model.name() << " d=" << model.dim() << " region=" << report.region_filter << ": "
          << report.checks << " checks, " << report.failure_count << " failures -> "
          << (report.pass() ? "PASS" : "FAIL") << '\n';
  for (const auto& f : report.failures) {
    summary << "  failure: state " << f.state_index << " (seed " << f.state_seed << ") x measurement "
            << f.measurement_index << " (seed " << f.measurement_seed << "): expected " << f.expected << ", got "
            << f.observed << '\n';
  }
  std::string payload;
  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "state_index,measurement_index,state_seed,measurement_seed,expected,observed\n";
    for (const auto& f : report.failures) {
      csv << f.state_index << ',' << f.measurement_index << ',' << f.state_seed << ',' << f.measurement_seed << ','
          << f.expected << ',' << f.observed << '\n';
    }
    payload = csv.str();
  } else {
    payload = to_json(report).dump(2) + "\n";
  }
  emit(cfg, payload, summary.str(), out, err);
  return report.pass() ? 0 : 1;
}

int cmd_overlap(const RunConfig& cfg, const std::string& spec_a, const std::string& spec_b, std::ostream& out,
                std::ostream& err) {
  const Model model = make_model(cfg);
  Rng rng(derive_seed(cfg.seed, 0));
  const PureState a = resolve_state(spec_a, model, rng);
  const PureState b = resolve_state(spec_b, model, rng);
  const auto e1 = model.prepare(a);
  const auto e2 = model.prepare(b);
  const double exact = overlap_measure(e1, e2);
  const auto mc = estimate_overlap_mc(e1, e2, cfg.n, derive_seed(cfg.seed, 1));
  const bool contains = mc.ci_low <= exact && exact <= mc.ci_high;
  std::ostringstream summary;
  summary << "overlap " << model.name() << " d=" << model.dim() << ": exact " << exact << ", MC " << mc.estimate
          << " [" << mc.ci_low << ", " << mc.ci_high << "] -> " << (contains ? "PASS" : "FAIL") << '\n';
  std::string payload;
  if (cfg.format == "csv") {
    payload = "model,d,exact,estimate,ci_low,ci_high,N,verdict\n" + model.name() + ',' +
              std::to_string(model.dim()) + ',' + fmt(exact) + ',' + fmt(mc.estimate) + ',' + fmt(mc.ci_low) + ',' +
              fmt(mc.ci_high) + ',' + std::to_string(mc.n) + ',' + (contains ? "pass" : "fail") + '\n';
  } else {
    const Json doc{{"schema", "ontic.overlap"},
                   {"schema_version", kSchemaVersion},
                   {"model", model.name()},
                   {"d", model.dim()},
                   {"psi1", state_to_json(a)},
                   {"psi2", state_to_json(b)},
                   {"mu1", epistemic_state_to_json(e1)},
                   {"mu2", epistemic_state_to_json(e2)},
                   {"exact_overlap", exact},
                   {"monte_carlo", to_json(mc)},
                   {"verdict", contains ? "pass" : "fail"}};
    payload = doc.dump(2) + "\n";
  }
  emit(cfg, payload, summary.str(), out, err);
  return contains ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ontological-model simulator: Bell model and its psi-epistemic modifications"};
  app.require_subcommand(1);

  RunConfig born_cfg, witness_cfg, z_cfg, region_cfg, overlap_cfg;

  auto* born = app.add_subcommand("verify-born", "Certify Born-rule reproduction by Monte Carlo and exactly");
  add_common(born, born_cfg, 100000);
  std::string state_spec = "random";
  std::string measurement_spec = "random";
  std::size_t configs = 1;
  std::string dump_path;
  born->add_option("--state", state_spec, "anchor | random | cap-random | <state.json>");
  born->add_option("--measurement", measurement_spec, "random | computational | <measurement.json>");
  born->add_option("--configs", configs, "Number of (state, measurement) configurations")->check(CLI::PositiveNumber);
  born->add_option("--trial-dump", dump_path, "CSV file receiving every trial's outcome");

  auto* witness = app.add_subcommand("witness", "Classify a model as psi-ontic or psi-epistemic on a state set");
  add_common(witness, witness_cfg, 0);
  std::size_t n_states = 50;
  bool bias_cap = false;
  std::string state_file;
  double threshold = 0.0;
  witness->add_option("--states", n_states, "Number of random states")->check(CLI::Range(2, 100000));
  witness->add_flag("--bias-cap", bias_cap, "Draw the states from the model's caps");
  witness->add_option("--state-file", state_file, "JSON array of states to test instead");
  witness->add_option("--threshold", threshold, "Overlap threshold for the verdict");

  auto* ztable = app.add_subcommand("z-table", "Tabulate z closed form against the brute-force oracle");
  add_common(ztable, z_cfg, 0);
  z_cfg.format = "csv";
  std::size_t z_d = 0;
  std::size_t grid = 21;
  std::size_t budget = 2000;
  ztable->remove_option(ztable->get_option("--d"));
  ztable->add_option("--d", z_d, "Single dimension (default: 2..8)");
  ztable->add_option("--grid", grid, "F grid points per dimension");
  ztable->add_option("--budget", budget, "Oracle candidates per point")->check(CLI::Range(1000, 10000000));

  auto* region = app.add_subcommand("region-check", "Check forced outcomes on the models' regions");
  add_common(region, region_cfg, 1000000);
  std::size_t region_states = 0;
  std::size_t region_measurements = 0;
  std::string region_filter = "any";
  bool inject = false;
  region->add_option("--states", region_states, "Region states (default ceil(sqrt(n)))");
  region->add_option("--measurements", region_measurements, "Measurements (default n / states)");
  region->add_option("--region", region_filter, "e0 | e1 | any")->check(CLI::IsMember({"e0", "e1", "any"}));
  region->add_flag("--inject-failure", inject, "Self-test: corrupt one response")->group("");

  auto* overlap = app.add_subcommand("overlap", "Exact and Monte Carlo overlap of two epistemic states");
  add_common(overlap, overlap_cfg, 100000);
  std::string spec_a = "anchor";
  std::string spec_b = "cap-random";
  overlap->add_option("--state-a", spec_a, "anchor | random | cap-random | <state.json>");
  overlap->add_option("--state-b", spec_b, "anchor | random | cap-random | <state.json>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*born) return cmd_verify_born(born_cfg, state_spec, measurement_spec, configs, dump_path, out, err);
    if (*witness) return cmd_witness(witness_cfg, n_states, bias_cap, state_file, threshold, out, err);
    if (*ztable) return cmd_z_table(z_cfg, z_d, grid, budget, out, err);
    if (*region) return cmd_region_check(region_cfg, region_states, region_measurements, region_filter, inject, out, err);
    if (*overlap) return cmd_overlap(overlap_cfg, spec_a, spec_b, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace ontic::cli
