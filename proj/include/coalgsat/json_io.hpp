#pragma once

#include "coalgsat/decision.hpp"
#include "coalgsat/model.hpp"
#include "json.hpp"

namespace coalgsat {

// {states: [0, ..], edges: [{from, to, weight}], atoms: {state: [names]},
// nominals: {name: state}}. Weights are strings ("3", "1/2") to stay exact;
// state keys of `atoms` are decimal strings.
nlohmann::json model_to_json(const Model& m);
// Throws std::invalid_argument on malformed input.
Model model_from_json(const nlohmann::json& j, Model::Kind kind);

// {verdict, root?, model?, stats?, reason?}
nlohmann::json decision_to_json(const Decision& d, bool with_model, bool with_stats);

}  // namespace coalgsat
