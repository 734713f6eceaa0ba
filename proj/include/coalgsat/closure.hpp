#pragma once

#include <boost/dynamic_bitset.hpp>
#include <boost/functional/hash.hpp>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "coalgsat/formula.hpp"

namespace coalgsat {

// A set of closure members, indexed by closure position.
using Sequent = boost::dynamic_bitset<std::uint64_t>;

struct SequentHash {
  std::size_t operator()(const Sequent& s) const { return boost::hash_value(s); }
};

// The closure of a set of root formulas under subformulas and normalized
// negation. Indices follow a depth-first pre-order in which every formula is
// immediately followed by its nneg partner.
class ClosureTable {
 public:
  ClosureTable() = default;
  // roots[0] is the global assumption, roots[1] (if given) the goal.
  explicit ClosureTable(std::span<const Formula> roots);
  ClosureTable(const Formula& psi, const Formula& phi0);

  std::size_t size() const { return formulas_.size(); }
  const Formula& formula(std::size_t i) const { return formulas_[i]; }
  const std::vector<Formula>& formulas() const { return formulas_; }
  // -1 if absent.
  long index_of(const Formula& f) const;
  std::size_t nneg_index(std::size_t i) const { return nneg_[i]; }
  // Closure indices of the immediate subformulas (connective operands, modal arguments).
  const std::vector<std::size_t>& sub_indices(std::size_t i) const { return subs_[i]; }

  std::size_t psi_index() const { return psi_; }
  std::size_t phi0_index() const { return phi0_; }
  const Formula& psi() const { return formulas_[psi_]; }
  const Formula& phi0() const { return formulas_[phi0_]; }

  // Positive modal atoms (atoms, nominals, modal operators) in closure order.
  const std::vector<std::size_t>& modal_atoms() const { return modal_atoms_; }

  Sequent empty_sequent() const { return Sequent(size()); }
  Sequent sequent_of(std::span<const Formula> fs) const;
  std::vector<Formula> members(const Sequent& s) const;
  std::string render(const Sequent& s) const;

 private:
  void visit(const Formula& f);
  std::size_t add(const Formula& f);

  std::vector<Formula> formulas_;
  std::unordered_map<Formula, std::size_t> index_;
  std::vector<std::size_t> nneg_;
  std::vector<std::vector<std::size_t>> subs_;
  std::vector<std::size_t> modal_atoms_;
  std::size_t psi_ = 0;
  std::size_t phi0_ = 0;
};

// Iterates set bits in increasing order.
template <typename F>
void for_each_member(const Sequent& s, F&& fn) {
  for (auto i = s.find_first(); i != Sequent::npos; i = s.find_next(i)) fn(static_cast<std::size_t>(i));
}

}  // namespace coalgsat
