#pragma once

#include <string_view>

#include "coalgsat/errors.hpp"
#include "coalgsat/formula.hpp"

namespace coalgsat {

// Parses the concrete syntax. Derived connectives, weak inequalities and
// probabilistic comparisons other than ">= 0" are desugared here.
// Throws ParseError.
Formula parse(std::string_view text);

}  // namespace coalgsat
