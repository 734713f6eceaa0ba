#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "coalgsat/model.hpp"
#include "coalgsat/onestep.hpp"

namespace coalgsat {

// Answer of a decision procedure. On Sat, `model` (when extraction is enabled)
// satisfies the assumption everywhere and the goal at `root`.
struct Decision {
  Verdict verdict = Verdict::Unknown;
  std::optional<Model> model;
  std::size_t root = 0;
  std::map<std::string, std::size_t> stats;
  // Why the answer is Unknown, if it is.
  std::string reason;
};

enum class Algorithm { Elim, Caching, Worklist };

Algorithm parse_algorithm(const std::string& name);  // "elim", "caching", "worklist"
std::string algorithm_name(Algorithm a);

}  // namespace coalgsat
