#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coalgsat/numeric.hpp"
#include "coalgsat/polynomial.hpp"

namespace coalgsat {

enum class Kind : std::uint8_t {
  Bot,
  Atom,
  Nominal,
  Neg,
  And,
  Diamond,     // relational diamond (logic K)
  Presburger,  // sum_i u_i * #(arg_i) REL bound
  Prob,        // p(w(arg_1), ..., w(arg_n)) >= 0
  Sat,         // @i phi
  Univ,        // [forall] phi
};

// Arithmetic relation of a Presburger atom; Mod is congruence modulo `modulus`.
enum class Rel : std::uint8_t { Lt, Gt, Eq, Mod };

namespace detail {
struct Node;
}

// Hash-consed formula handle. Structurally equal formulas share one node, so
// equality and hashing are pointer operations. Nodes live for the whole process
// and the intern table is thread-safe.
class Formula {
 public:
  Formula() = default;

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  // Creation-order identifier; stable within a process.
  std::uint64_t id() const;
  // Atom and nominal names; the nominal of a satisfaction operator.
  const std::string& name() const;
  // Operands of connectives, and the argument formulas of modal atoms.
  std::span<const Formula> children() const;
  const Formula& child(std::size_t i = 0) const { return children()[i]; }

  // Presburger payload.
  const std::vector<Int>& coefficients() const;
  Rel rel() const;
  const Int& bound() const;
  const Int& modulus() const;

  // Probabilistic payload: polynomial over placeholders X_0..X_{n-1}, one per argument.
  const Polynomial& polynomial() const;

  // Number of nodes in the syntax tree (shared subtrees counted repeatedly, saturating).
  std::uint64_t size() const;

  bool operator==(const Formula& o) const { return node_ == o.node_; }
  bool operator!=(const Formula& o) const { return node_ != o.node_; }
  bool operator<(const Formula& o) const { return id() < o.id(); }

  std::size_t hash() const { return std::hash<const void*>{}(node_); }

  explicit Formula(const detail::Node* n) : node_(n) {}
  const detail::Node* raw() const { return node_; }

 private:
  const detail::Node* node_ = nullptr;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Core constructors.
Formula bot();
Formula atom(const std::string& name);
Formula nominal(const std::string& name);
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula diamond(Formula f);
// Throws std::invalid_argument for a non-positive modulus or mismatched lengths.
Formula presburger(std::vector<std::pair<Int, Formula>> terms, Rel rel, Int bound, Int modulus = Int(0));
// Arguments are canonicalized: duplicates merged, unused ones dropped, and the
// rest ordered by (size, rendering) with the placeholders renumbered to match.
Formula prob(const Polynomial& poly, std::vector<Formula> args);
Formula sat(const std::string& nominal_name, Formula f);
Formula univ(Formula f);

// Derived connectives; these expand into the core constructors.
Formula top();
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula conj_all(std::span<const Formula> fs);  // empty -> top()

// Same connective or modality (operator data included) over new children.
Formula with_children(const Formula& f, std::vector<Formula> kids);

// Normalized negation: strips one leading negation or adds one.
Formula nneg(Formula f);

// Atoms, nominals, and the three kinds of modal operators.
bool is_modal_atom(const Formula& f);
bool is_modal_literal(const Formula& f);
const Formula& literal_atom(const Formula& literal);
bool literal_positive(const Formula& literal);

// Fully parenthesized canonical text; parse(render(f)) == f.
std::string render(const Formula& f);

// Depth-first pre-order over all distinct subformulas, f first.
std::vector<Formula> subformulas(const Formula& f);
bool contains_kind(const Formula& f, Kind k);
// Nominal names in first-occurrence order (including those under @).
std::vector<std::string> nominals_of(const Formula& f);

}  // namespace coalgsat

template <>
struct std::hash<coalgsat::Formula> {
  std::size_t operator()(const coalgsat::Formula& f) const { return f.hash(); }
};
