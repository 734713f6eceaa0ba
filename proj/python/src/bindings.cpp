#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coalgsat/decide.hpp"
#include "coalgsat/json_io.hpp"
#include "coalgsat/oracle.hpp"
#include "coalgsat/parser.hpp"

namespace py = pybind11;
using namespace coalgsat;

namespace {

// Results cross the boundary as JSON text; the Python wrapper decodes them.
std::string decide_json(const std::string& assumption, const std::string& formula, const std::string& logic,
                        const std::string& algorithm, bool hybrid, bool kripke, bool emit_model, bool stats) {
  Logic l = parse_logic(logic);
  DecideOptions opt;
  opt.algorithm = parse_algorithm(algorithm);
  opt.hybrid = hybrid;
  opt.kripke = kripke;
  opt.extract = emit_model;
  Decision d;
  {
    py::gil_scoped_release release;
    d = decide(parse(assumption), parse(formula), l, opt);
  }
  return decision_to_json(d, emit_model, stats).dump();
}

std::string oracle_json(const std::string& assumption, const std::string& formula, const std::string& logic,
                        std::size_t max_states, unsigned weight_bound) {
  Logic l = parse_logic(logic);
  OracleOptions opt;
  opt.max_states = max_states;
  opt.weight_bound = weight_bound;
  OracleResult r = oracle_search(adapt(parse(assumption), l), adapt(parse(formula), l), l, opt);
  nlohmann::json out = {{"found", r.model.has_value()}, {"exhausted", r.exhausted}};
  if (r.model) out["model"] = model_to_json(*r.model);
  return out.dump();
}

std::vector<bool> check_json(const std::string& model, const std::string& formula, const std::string& logic) {
  Logic l = parse_logic(logic);
  Model m = model_from_json(nlohmann::json::parse(model), model_kind(l));
  return model_check(m, adapt(parse(formula), l));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Satisfiability checking for coalgebraic modal logics";
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);
  m.def("decide_json", &decide_json, py::arg("assumption"), py::arg("formula"), py::arg("logic"),
        py::arg("algorithm") = "worklist", py::arg("hybrid") = false, py::arg("kripke") = false,
        py::arg("emit_model") = true, py::arg("stats") = false);
  m.def("oracle_json", &oracle_json, py::arg("assumption"), py::arg("formula"), py::arg("logic"),
        py::arg("max_states") = 3, py::arg("weight_bound") = 4);
  m.def("model_check_json", &check_json, py::arg("model"), py::arg("formula"), py::arg("logic"));
  m.def("render", [](const std::string& text) { return render(parse(text)); });
}
