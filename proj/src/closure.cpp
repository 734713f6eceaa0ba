#include "coalgsat/closure.hpp"

#include <stdexcept>

namespace coalgsat {

ClosureTable::ClosureTable(const Formula& psi, const Formula& phi0) {
  Formula roots[] = {psi, phi0};
  *this = ClosureTable(std::span<const Formula>(roots));
}

ClosureTable::ClosureTable(std::span<const Formula> roots) {
  if (roots.empty()) throw std::invalid_argument("closure of an empty root set");
  for (const auto& r : roots) visit(r);
  nneg_.assign(formulas_.size(), 0);
  subs_.assign(formulas_.size(), {});
  for (std::size_t i = 0; i < formulas_.size(); ++i) {
    const Formula& f = formulas_[i];
    nneg_[i] = index_.at(nneg(f));
    for (const auto& c : f.children()) subs_[i].push_back(index_.at(c));
    if (is_modal_atom(f)) modal_atoms_.push_back(i);
  }
  psi_ = index_.at(roots[0]);
  phi0_ = index_.at(roots.size() > 1 ? roots[1] : roots[0]);
}

std::size_t ClosureTable::add(const Formula& f) {
  auto [it, inserted] = index_.emplace(f, formulas_.size());
  if (inserted) formulas_.push_back(f);
  return it->second;
}

void ClosureTable::visit(const Formula& root) {
  // Explicit stack keeps deep chains off the call stack.
  std::vector<Formula> stack{root};
  while (!stack.empty()) {
    Formula f = stack.back();
    stack.pop_back();
    if (index_.count(f)) continue;
    add(f);
    Formula partner = nneg(f);
    add(partner);
    std::vector<Formula> next;
    for (const auto& c : f.children()) next.push_back(c);
    for (const auto& c : partner.children()) next.push_back(c);
    for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(*it);
  }
}

long ClosureTable::index_of(const Formula& f) const {
  auto it = index_.find(f);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

Sequent ClosureTable::sequent_of(std::span<const Formula> fs) const {
  Sequent s = empty_sequent();
  for (const auto& f : fs) {
    long i = index_of(f);
    if (i < 0) throw std::invalid_argument("formula not in closure: " + coalgsat::render(f));
    s.set(static_cast<std::size_t>(i));
  }
  return s;
}

std::vector<Formula> ClosureTable::members(const Sequent& s) const {
  std::vector<Formula> out;
  for_each_member(s, [&](std::size_t i) { out.push_back(formulas_[i]); });
  return out;
}

std::string ClosureTable::render(const Sequent& s) const {
  std::string out = "{";
  bool first = true;
  for_each_member(s, [&](std::size_t i) {
    if (!first) out += ", ";
    first = false;
    out += coalgsat::render(formulas_[i]);
  });
  return out + "}";
}

}  // namespace coalgsat
