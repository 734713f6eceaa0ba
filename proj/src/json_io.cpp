#include "coalgsat/json_io.hpp"

#include <stdexcept>

namespace coalgsat {

using nlohmann::json;

json model_to_json(const Model& m) {
  json states = json::array(), edges = json::array(), atoms = json::object(), nominals = json::object();
  for (std::size_t s = 0; s < m.num_states; ++s) {
    states.push_back(s);
    for (const auto& [t, w] : m.edges[s]) edges.push_back({{"from", s}, {"to", t}, {"weight", w.get_str()}});
    if (!m.atoms[s].empty()) atoms[std::to_string(s)] = m.atoms[s];
  }
  for (const auto& [name, s] : m.nominals) nominals[name] = s;
  return {{"states", states}, {"edges", edges}, {"atoms", atoms}, {"nominals", nominals}};
}

Model model_from_json(const json& j, Model::Kind kind) {
  try {
    Model m(kind, j.at("states").size());
    for (std::size_t s = 0; s < m.num_states; ++s)
      if (j.at("states")[s].get<std::size_t>() != s) throw std::invalid_argument("states must be 0..n-1");
    auto state = [&](std::size_t s) {
      if (s >= m.num_states) throw std::invalid_argument("state out of range");
      return s;
    };
    for (const auto& e : j.at("edges")) {
      Rat w(e.at("weight").get<std::string>());
      w.canonicalize();
      m.set_edge(state(e.at("from").get<std::size_t>()), state(e.at("to").get<std::size_t>()), w);
    }
    for (const auto& [key, names] : j.at("atoms").items())
      for (const auto& n : names) m.atoms[state(std::stoul(key))].insert(n.get<std::string>());
    for (const auto& [name, s] : j.at("nominals").items()) m.nominals[name] = state(s.get<std::size_t>());
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed model: ") + e.what());
  }
}

json decision_to_json(const Decision& d, bool with_model, bool with_stats) {
  json out = {{"verdict", verdict_name(d.verdict)}};
  if (with_model && d.model) {
    out["model"] = model_to_json(*d.model);
    out["root"] = d.root;
  }
  if (with_stats) out["stats"] = d.stats;
  if (!d.reason.empty()) out["reason"] = d.reason;
  return out;
}

}  // namespace coalgsat
