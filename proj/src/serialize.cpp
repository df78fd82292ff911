#include "ontic/serialize.hpp"

#include <stdexcept>
#include <string>

namespace ontic {
namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw std::invalid_argument("malformed JSON: " + what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

Json region_to_json(const RegionDescriptor& region) {
  Json j{{"variant", region.tag()}, {"d", region.dim()}};
  switch (region.kind()) {
    case RegionKind::QubitCap0:
    case RegionKind::QubitCap1: break;
    case RegionKind::GeneralCap: j["anchor"] = state_to_json(region.anchor()); break;
    case RegionKind::BasisCap: {
      // Frame is |j> followed by the rest of the basis; store the basis in its
      // original order.
      const std::size_t jdx = region.basis_index();
      Json basis = Json::array();
      for (std::size_t k = 0, rest = 1; k < region.dim(); ++k) {
        basis.push_back(state_to_json(k == jdx ? region.frame()[0] : region.frame()[rest++]));
      }
      j["basis"] = std::move(basis);
      j["j"] = jdx;
      break;
    }
  }
  return j;
}

RegionDescriptor region_from_json(const Json& j) {
  const auto tag = field(j, "variant").get<std::string>();
  if (tag == "qubit-cap-0") return RegionDescriptor::qubit_cap0();
  if (tag == "qubit-cap-1") return RegionDescriptor::qubit_cap1();
  if (tag == "general-cap") return RegionDescriptor::general_cap(state_from_json(field(j, "anchor")));
  if (tag == "basis-cap") {
    std::vector<PureState> states;
    for (const auto& s : field(j, "basis")) states.push_back(state_from_json(s));
    return RegionDescriptor::basis_cap(Basis(std::move(states)), field(j, "j").get<std::size_t>());
  }
  malformed("unknown region variant '" + tag + "'");
}

}  // namespace

Json state_to_json(const PureState& psi) {
  const PureState c = psi.canonical();
  Json re = Json::array();
  Json im = Json::array();
  for (const auto& a : c.amplitudes()) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  return Json{{"d", c.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

PureState state_from_json(const Json& j) {
  try {
    const auto d = field(j, "d").get<std::size_t>();
    const auto re = field(j, "re").get<std::vector<double>>();
    const auto im = field(j, "im").get<std::vector<double>>();
    if (re.size() != d || im.size() != d) malformed("state 're'/'im' length must equal 'd'");
    std::vector<Complex> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = Complex{re[i], im[i]};
    return PureState::normalized(std::move(v));
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

Json measurement_to_json(const OrderedMeasurement& m) {
  Json outcomes = Json::array();
  for (const auto& s : m.outcomes()) outcomes.push_back(state_to_json(s));
  return Json{{"outcomes", std::move(outcomes)}, {"anchor", state_to_json(m.anchor())}};
}

OrderedMeasurement measurement_from_json(const Json& j) {
  std::vector<PureState> states;
  const auto& outcomes = field(j, "outcomes");
  if (!outcomes.is_array()) malformed("'outcomes' must be an array");
  for (const auto& s : outcomes) states.push_back(state_from_json(s));
  return order_for_anchor(Basis(std::move(states)), state_from_json(field(j, "anchor")));
}

Json epistemic_state_to_json(const EpistemicState& e) {
  Json comps = Json::array();
  for (const auto& [w, comp] : e.components()) {
    if (const auto* line = std::get_if<DeltaLine>(&comp)) {
      comps.push_back({{"weight", w},
                       {"kind", "delta"},
                       {"center", state_to_json(line->center)},
                       {"interval", {line->lo, line->hi}}});
    } else {
      const auto& r = std::get<RegionUniform>(comp);
      comps.push_back({{"weight", w},
                       {"kind", "region"},
                       {"region", region_to_json(r.region)},
                       {"distribution", to_string(r.distribution)}});
    }
  }
  return Json{{"d", e.dim()}, {"components", std::move(comps)}};
}

EpistemicState epistemic_state_from_json(const Json& j) {
  try {
    const auto d = field(j, "d").get<std::size_t>();
    std::vector<WeightedComponent> comps;
    for (const auto& c : field(j, "components")) {
      const double w = field(c, "weight").get<double>();
      const auto kind = field(c, "kind").get<std::string>();
      if (kind == "delta") {
        const auto iv = field(c, "interval").get<std::vector<double>>();
        if (iv.size() != 2) malformed("'interval' must have two entries");
        comps.push_back({w, DeltaLine{state_from_json(field(c, "center")), iv[0], iv[1]}});
      } else if (kind == "region") {
        comps.push_back({w, RegionUniform{region_from_json(field(c, "region")),
                                          region_distribution_from_string(
                                              field(c, "distribution").get<std::string>())}});
      } else {
        malformed("unknown component kind '" + kind + "'");
      }
    }
    return EpistemicState(d, std::move(comps));
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

Json to_json(const TrialReport& r) {
  return Json{{"schema", "ontic.trial-report"},
              {"schema_version", kSchemaVersion},
              {"model", r.model},
              {"layout", r.layout},
              {"region_distribution", r.region_distribution},
              {"d", r.d},
              {"psi", state_to_json(r.psi)},
              {"measurement", measurement_to_json(r.measurement)},
              {"N", r.n},
              {"seed", r.seed},
              {"counts", r.counts},
              {"empirical", r.empirical},
              {"target", r.target},
              {"tv_distance", r.tv_distance},
              {"chi_squared", r.fit.chi_squared},
              {"degrees_of_freedom", r.fit.degrees_of_freedom},
              {"p_value", r.fit.p_value},
              {"impossible_observations", r.fit.impossible_observations},
              {"verdict", r.pass ? "pass" : "fail"}};
}

Json to_json(const PropertyReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"state_index", f.state_index},
                        {"measurement_index", f.measurement_index},
                        {"state_seed", f.state_seed},
                        {"measurement_seed", f.measurement_seed},
                        {"expected", f.expected},
                        {"observed", f.observed}});
  }
  return Json{{"schema", "ontic.property-report"},
              {"schema_version", kSchemaVersion},
              {"property", "region-constancy"},
              {"model", r.model},
              {"region", r.region_filter},
              {"d", r.d},
              {"seed", r.seed},
              {"n_states", r.n_states},
              {"n_measurements", r.n_measurements},
              {"boundary_states", r.boundary_states},
              {"checks", r.checks},
              {"failure_count", r.failure_count},
              {"failures", std::move(failures)},
              {"verdict", r.pass() ? "pass" : "fail"}};
}

Json to_json(const OverlapEstimate& r) {
  return Json{{"estimate", r.estimate}, {"ci99", {r.ci_low, r.ci_high}}, {"N", r.n},
              {"hits", r.hits},         {"seed", r.seed}};
}

Json to_json(const EpistemicityVerdict& v) {
  Json j{{"schema", "ontic.epistemicity-verdict"},
         {"schema_version", kSchemaVersion},
         {"model", v.model},
         {"verdict", v.epistemic ? "psi-epistemic" : "psi-ontic"},
         {"states_tested", v.states_tested},
         {"pairs_tested", v.pairs_tested},
         {"threshold", v.threshold},
         {"scope", "relative to the tested state set"}};
  if (v.witness) {
    j["witness"] = {{"first", v.witness->first},
                    {"second", v.witness->second},
                    {"psi1", state_to_json(v.witness->psi1)},
                    {"psi2", state_to_json(v.witness->psi2)},
                    {"overlap", v.witness->overlap}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace ontic
