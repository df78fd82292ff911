#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ontic/cli.hpp"
#include "ontic/serialize.hpp"
#include "ontic/verify.hpp"

namespace py = pybind11;
using namespace ontic;

namespace {

using Amplitudes = std::vector<Complex>;

// Reports cross the boundary as JSON text; the Python side parses them.
std::string dump(const Json& j) { return j.dump(); }

PureState to_state(const Amplitudes& a) { return PureState::normalized(a); }

Model make_model(const std::string& name, std::size_t d, const std::string& distribution) {
  return Model::from_name(name, d, region_distribution_from_string(distribution));
}

OrderedMeasurement to_measurement(const std::vector<Amplitudes>& outcomes, const Amplitudes& anchor) {
  std::vector<PureState> states;
  for (const auto& o : outcomes) states.push_back(to_state(o));
  return order_for_anchor(Basis(std::move(states)), to_state(anchor));
}

}  // namespace

PYBIND11_MODULE(_ontic, m) {
  m.doc() = "Bell ontological model and its psi-epistemic modifications";
  py::register_exception<std::invalid_argument>(m, "InvalidArgument", PyExc_ValueError);

  m.def("models", &Model::names);

  m.def("z_from_fidelity", &z_from_fidelity, py::arg("fidelity"), py::arg("d"));
  m.def(
      "z_closed_form", [](const Amplitudes& chi, const Amplitudes& anchor) {
        return z_closed_form(to_state(chi), to_state(anchor)).value;
      },
      py::arg("chi"), py::arg("anchor"));
  m.def(
      "z_oracle",
      [](const Amplitudes& chi, const Amplitudes& anchor, std::size_t budget, std::uint64_t seed) {
        Rng rng(seed);
        return z_oracle(to_state(chi), to_state(anchor), budget, rng).z.value;
      },
      py::arg("chi"), py::arg("anchor"), py::arg("budget") = 2000, py::arg("seed") = 1);

  m.def(
      "haar_random",
      [](std::size_t d, std::uint64_t seed) {
        Rng rng(seed);
        const auto a = haar_random(d, rng).amplitudes();
        return Amplitudes(a.begin(), a.end());
      },
      py::arg("d"), py::arg("seed"));
  m.def(
      "born_probabilities",
      [](const Amplitudes& psi, const std::vector<Amplitudes>& outcomes, const Amplitudes& anchor) {
        return born_probabilities(to_state(psi), to_measurement(outcomes, anchor));
      },
      py::arg("psi"), py::arg("outcomes"), py::arg("anchor"));

  m.def(
      "prepare",
      [](const std::string& model, std::size_t d, const Amplitudes& psi, const std::string& distribution) {
        return dump(epistemic_state_to_json(make_model(model, d, distribution).prepare(to_state(psi))));
      },
      py::arg("model"), py::arg("d"), py::arg("psi"), py::arg("distribution") = "fubini-study-uniform");

  m.def(
      "overlap_measure",
      [](const std::string& a, const std::string& b) {
        return overlap_measure(epistemic_state_from_json(Json::parse(a)), epistemic_state_from_json(Json::parse(b)));
      },
      py::arg("e1"), py::arg("e2"));
  m.def(
      "estimate_overlap_mc",
      [](const std::string& a, const std::string& b, std::uint64_t n, std::uint64_t seed) {
        return dump(to_json(estimate_overlap_mc(epistemic_state_from_json(Json::parse(a)),
                                                epistemic_state_from_json(Json::parse(b)), n, seed)));
      },
      py::arg("e1"), py::arg("e2"), py::arg("n"), py::arg("seed"));

  m.def(
      "run_born_trials",
      [](const std::string& model, std::size_t d, const Amplitudes& psi, const std::vector<Amplitudes>& outcomes,
         const Amplitudes& anchor, std::uint64_t n, std::uint64_t seed, unsigned workers,
         const std::string& distribution) {
        const auto mdl = make_model(model, d, distribution);
        const auto report = [&] {
          py::gil_scoped_release release;
          return run_born_trials(mdl, to_state(psi), to_measurement(outcomes, anchor), n, seed, {workers});
        }();
        return dump(to_json(report));
      },
      py::arg("model"), py::arg("d"), py::arg("psi"), py::arg("outcomes"), py::arg("anchor"), py::arg("n"),
      py::arg("seed"), py::arg("workers") = 1, py::arg("distribution") = "fubini-study-uniform");
  m.def(
      "exact_born_deviation",
      [](const std::string& model, std::size_t d, const Amplitudes& psi, const std::vector<Amplitudes>& outcomes,
         const Amplitudes& anchor) {
        return exact_born_deviation(make_model(model, d, "fubini-study-uniform"), to_state(psi),
                                    to_measurement(outcomes, anchor));
      },
      py::arg("model"), py::arg("d"), py::arg("psi"), py::arg("outcomes"), py::arg("anchor"));

  m.def(
      "check_region_constancy",
      [](const std::string& model, std::size_t d, std::size_t n_states, std::size_t n_measurements,
         std::uint64_t seed, unsigned workers) {
        RegionCheckOptions options;
        options.workers = workers;
        const auto mdl = make_model(model, d, "fubini-study-uniform");
        py::gil_scoped_release release;
        return dump(to_json(check_region_constancy(mdl, n_states, n_measurements, seed, options)));
      },
      py::arg("model"), py::arg("d"), py::arg("n_states"), py::arg("n_measurements"), py::arg("seed"),
      py::arg("workers") = 1);

  m.def(
      "classify_epistemicity",
      [](const std::string& model, std::size_t d, const std::vector<Amplitudes>& states, double threshold) {
        std::vector<PureState> ps;
        for (const auto& s : states) ps.push_back(to_state(s));
        return dump(to_json(classify_epistemicity(make_model(model, d, "fubini-study-uniform"), ps, threshold)));
      },
      py::arg("model"), py::arg("d"), py::arg("states"), py::arg("threshold") = 0.0);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "ontic");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"));
}
