#pragma once

#include <string>
#include <string_view>

#include "coalgsat/formula.hpp"
#include "coalgsat/model.hpp"

namespace coalgsat {

enum class Logic { K, Presburger, Prob };

Logic parse_logic(std::string_view name);  // "k", "presburger", "prob"
std::string logic_name(Logic l);

// Brings a parsed formula into the fragment of `logic`: <>phi becomes #(phi) > 0
// (Presburger) or w(phi) > 0 (probabilistic). Throws std::invalid_argument when
// the formula uses a modality of a different logic.
Formula adapt(const Formula& f, Logic logic);

Model::Kind model_kind(Logic logic);

}  // namespace coalgsat
