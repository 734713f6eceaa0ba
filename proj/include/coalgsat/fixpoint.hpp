#pragma once

#include <utility>

namespace coalgsat {

// Kleene iteration for a monotone f on a finite lattice. Starting from the top
// element yields the greatest fixpoint, starting from the bottom the least.
template <typename Set, typename F>
Set iterate_to_fixpoint(Set start, F&& f) {
  for (;;) {
    Set next = f(start);
    if (next == start) return start;
    start = std::move(next);
  }
}

template <typename Set, typename F>
Set greatest_fixpoint(Set top, F&& f) {
  return iterate_to_fixpoint(std::move(top), std::forward<F>(f));
}

template <typename Set, typename F>
Set least_fixpoint(Set bottom, F&& f) {
  return iterate_to_fixpoint(std::move(bottom), std::forward<F>(f));
}

}  // namespace coalgsat
