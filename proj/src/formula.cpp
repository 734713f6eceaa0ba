#include "coalgsat/formula.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace coalgsat {

namespace detail {

struct Node {
  Kind kind = Kind::Bot;
  std::uint64_t id = 0;
  std::uint64_t size = 1;
  std::string name;
  std::vector<Formula> kids;
  std::vector<Int> coeffs;
  Rel rel = Rel::Gt;
  Int bound;
  Int modulus;
  Polynomial poly;
};

}  // namespace detail

namespace {

using detail::Node;

class InternPool {
 public:
  const Node* intern(Node&& n) {
    std::string key = key_of(n);
    std::lock_guard lock(mu_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    n.id = nodes_.size();
    nodes_.push_back(std::move(n));
    const Node* p = &nodes_.back();
    table_.emplace(std::move(key), p);
    return p;
  }

 private:
  static std::string key_of(const Node& n) {
    std::string k;
    k += static_cast<char>('A' + static_cast<int>(n.kind));
    k += n.name;
    k += '|';
    for (const auto& c : n.kids) {
      k += std::to_string(c.id());
      k += ',';
    }
    if (n.kind == Kind::Presburger) {
      k += '|';
      for (const auto& c : n.coeffs) k += c.get_str() + ",";
      k += static_cast<char>('0' + static_cast<int>(n.rel));
      k += n.bound.get_str() + "/" + n.modulus.get_str();
    } else if (n.kind == Kind::Prob) {
      k += '|';
      for (const auto& [m, c] : n.poly.terms()) {
        for (const auto& [v, e] : m) k += std::to_string(v) + "^" + std::to_string(e) + ".";
        k += ":" + to_string(c) + ";";
      }
    }
    return k;
  }

  std::mutex mu_;
  std::deque<Node> nodes_;
  std::unordered_map<std::string, const Node*> table_;
};

InternPool& pool() {
  static InternPool p;
  return p;
}

std::uint64_t add_sizes(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) return std::numeric_limits<std::uint64_t>::max();
  return a + b;
}

Formula make(Node&& n) {
  n.size = 1;
  for (const auto& k : n.kids) n.size = add_sizes(n.size, k.size());
  return Formula(pool().intern(std::move(n)));
}

bool rel_holds(const Int& lhs, Rel rel, const Int& bound, const Int& modulus) {
  switch (rel) {
    case Rel::Lt:
      return lhs < bound;
    case Rel::Gt:
      return lhs > bound;
    case Rel::Eq:
      return lhs == bound;
    case Rel::Mod:
      return mod_floor(lhs - bound, modulus) == 0;
  }
  return false;
}

const Node& node_of(const Formula& f) {
  if (!f.valid()) throw std::logic_error("use of empty formula handle");
  return *f.raw();
}

}  // namespace

Kind Formula::kind() const { return node_of(*this).kind; }
std::uint64_t Formula::id() const { return node_of(*this).id; }
const std::string& Formula::name() const { return node_of(*this).name; }
std::span<const Formula> Formula::children() const { return node_of(*this).kids; }
const std::vector<Int>& Formula::coefficients() const { return node_of(*this).coeffs; }
Rel Formula::rel() const { return node_of(*this).rel; }
const Int& Formula::bound() const { return node_of(*this).bound; }
const Int& Formula::modulus() const { return node_of(*this).modulus; }
const Polynomial& Formula::polynomial() const { return node_of(*this).poly; }
std::uint64_t Formula::size() const { return node_of(*this).size; }

Formula bot() {
  Node n;
  n.kind = Kind::Bot;
  return make(std::move(n));
}

Formula atom(const std::string& name) {
  Node n;
  n.kind = Kind::Atom;
  n.name = name;
  return make(std::move(n));
}

Formula nominal(const std::string& name) {
  Node n;
  n.kind = Kind::Nominal;
  n.name = name;
  return make(std::move(n));
}

Formula neg(Formula f) {
  Node n;
  n.kind = Kind::Neg;
  n.kids = {f};
  return make(std::move(n));
}

Formula conj(Formula a, Formula b) {
  Node n;
  n.kind = Kind::And;
  n.kids = {a, b};
  return make(std::move(n));
}

Formula diamond(Formula f) {
  Node n;
  n.kind = Kind::Diamond;
  n.kids = {f};
  return make(std::move(n));
}

Formula presburger(std::vector<std::pair<Int, Formula>> terms, Rel rel, Int bound, Int modulus) {
  if (rel == Rel::Mod) {
    if (modulus <= 0) throw std::invalid_argument("modulus must be positive");
  } else {
    modulus = 0;
  }
  // An atom without terms compares the constant 0 and is folded away.
  if (terms.empty()) return rel_holds(Int(0), rel, bound, modulus) ? top() : bot();
  Node n;
  n.kind = Kind::Presburger;
  for (auto& [c, f] : terms) {
    n.coeffs.push_back(c);
    n.kids.push_back(f);
  }
  n.rel = rel;
  n.bound = std::move(bound);
  n.modulus = std::move(modulus);
  return make(std::move(n));
}

Formula prob(const Polynomial& poly, std::vector<Formula> args) {
  if (poly.arity() > args.size()) throw std::invalid_argument("polynomial refers to missing argument");
  // Merge duplicate arguments.
  std::vector<Formula> distinct;
  std::vector<std::uint32_t> to_distinct(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    auto it = std::find(distinct.begin(), distinct.end(), args[i]);
    to_distinct[i] = static_cast<std::uint32_t>(it - distinct.begin());
    if (it == distinct.end()) distinct.push_back(args[i]);
  }
  Polynomial p = poly.renamed(to_distinct);
  if (p.degree() == 0) return p.constant_term() >= 0 ? top() : bot();

  std::vector<bool> used(distinct.size(), false);
  for (const auto& [m, c] : p.terms())
    for (const auto& [v, e] : m) used[v] = true;
  std::vector<std::pair<std::pair<std::uint64_t, std::string>, std::uint32_t>> order;
  for (std::uint32_t i = 0; i < distinct.size(); ++i)
    if (used[i]) order.push_back({{distinct[i].size(), render(distinct[i])}, i});
  std::sort(order.begin(), order.end());

  std::vector<std::uint32_t> mapping(distinct.size(), 0);
  Node n;
  n.kind = Kind::Prob;
  for (std::uint32_t k = 0; k < order.size(); ++k) {
    mapping[order[k].second] = k;
    n.kids.push_back(distinct[order[k].second]);
  }
  n.poly = p.renamed(mapping);
  return make(std::move(n));
}

Formula sat(const std::string& nominal_name, Formula f) {
  Node n;
  n.kind = Kind::Sat;
  n.name = nominal_name;
  n.kids = {f};
  return make(std::move(n));
}

Formula univ(Formula f) {
  Node n;
  n.kind = Kind::Univ;
  n.kids = {f};
  return make(std::move(n));
}

Formula top() { return neg(bot()); }
Formula disj(Formula a, Formula b) { return neg(conj(neg(a), neg(b))); }
Formula implies(Formula a, Formula b) { return neg(conj(a, neg(b))); }
Formula iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }

Formula conj_all(std::span<const Formula> fs) {
  if (fs.empty()) return top();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula nneg(Formula f) { return f.kind() == Kind::Neg ? f.child() : neg(f); }

bool is_modal_atom(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Nominal:
    case Kind::Diamond:
    case Kind::Presburger:
    case Kind::Prob:
      return true;
    default:
      return false;
  }
}

bool is_modal_literal(const Formula& f) {
  return is_modal_atom(f) || (f.kind() == Kind::Neg && is_modal_atom(f.child()));
}

const Formula& literal_atom(const Formula& literal) {
  return literal.kind() == Kind::Neg ? literal.child() : literal;
}

bool literal_positive(const Formula& literal) { return literal.kind() != Kind::Neg; }

namespace {

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Bot:
      out += "false";
      return;
    case Kind::Atom:
      out += f.name();
      return;
    case Kind::Nominal:
      out += "'" + f.name();
      return;
    case Kind::Neg:
      if (f.child().kind() == Kind::Bot) {
        out += "true";
        return;
      }
      out += "~";
      render_into(f.child(), out);
      return;
    case Kind::And:
      out += "(";
      render_into(f.child(0), out);
      out += " & ";
      render_into(f.child(1), out);
      out += ")";
      return;
    case Kind::Diamond:
      out += "<>";
      render_into(f.child(), out);
      return;
    case Kind::Presburger: {
      out += "(";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += " + ";
        out += f.coefficients()[i].get_str() + "*#(";
        render_into(f.child(i), out);
        out += ")";
      }
      switch (f.rel()) {
        case Rel::Lt:
          out += " < ";
          break;
        case Rel::Gt:
          out += " > ";
          break;
        case Rel::Eq:
          out += " = ";
          break;
        case Rel::Mod:
          out += " =mod " + f.modulus().get_str() + "= ";
          break;
      }
      out += f.bound().get_str() + ")";
      return;
    }
    case Kind::Prob: {
      auto kids = f.children();
      out += "(";
      out += f.polynomial().render([&](std::uint32_t v) { return "w(" + render(kids[v]) + ")"; });
      out += " >= 0)";
      return;
    }
    case Kind::Sat:
      out += "@'" + f.name() + " ";
      render_into(f.child(), out);
      return;
    case Kind::Univ:
      out += "A ";
      render_into(f.child(), out);
      return;
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    out.push_back(g);
    auto kids = g.children();
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

bool contains_kind(const Formula& f, Kind k) {
  for (const auto& g : subformulas(f))
    if (g.kind() == k) return true;
  return false;
}

std::vector<std::string> nominals_of(const Formula& f) {
  std::vector<std::string> out;
  auto add = [&](const std::string& n) {
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  };
  for (const auto& g : subformulas(f)) {
    if (g.kind() == Kind::Nominal || g.kind() == Kind::Sat) add(g.name());
  }
  return out;
}

Formula with_children(const Formula& f, std::vector<Formula> kids) {
  if (kids.size() != f.children().size()) throw std::invalid_argument("with_children: arity mismatch");
  switch (f.kind()) {
    case Kind::Bot:
    case Kind::Atom:
    case Kind::Nominal:
      return f;
    case Kind::Neg:
      return neg(kids[0]);
    case Kind::And:
      return conj(kids[0], kids[1]);
    case Kind::Diamond:
      return diamond(kids[0]);
    case Kind::Sat:
      return sat(f.name(), kids[0]);
    case Kind::Univ:
      return univ(kids[0]);
    case Kind::Presburger: {
      std::vector<std::pair<Int, Formula>> terms;
      for (std::size_t i = 0; i < kids.size(); ++i) terms.emplace_back(f.coefficients()[i], kids[i]);
      return presburger(std::move(terms), f.rel(), f.bound(), f.modulus());
    }
    case Kind::Prob:
      return prob(f.polynomial(), std::move(kids));
  }
  return f;
}

}  // namespace coalgsat
