#include "coalgsat/parser.hpp"

#include <cctype>
#include <optional>

namespace coalgsat {

namespace {

// One factor of an arithmetic product: #(arg) or w(arg).
struct Measure {
  bool weight;
  Formula arg;
};

// c * m_1 * ... * m_k; k = 0 is a constant.
struct Monom {
  Rat coeff;
  std::vector<Measure> factors;
};

using Expr = std::vector<Monom>;

Expr negate(Expr e) {
  for (auto& m : e) m.coeff = -m.coeff;
  return e;
}

Expr multiply(const Expr& a, const Expr& b) {
  Expr out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Monom m{x.coeff * y.coeff, x.factors};
      m.factors.insert(m.factors.end(), y.factors.begin(), y.factors.end());
      out.push_back(std::move(m));
    }
  return out;
}

enum class Cmp { Lt, Le, Gt, Ge, Eq, Mod };

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Formula parse_all() {
    Formula f = parse_iff();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }

  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(std::string_view tok) {
    skip_ws();
    return s_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  // Keyword followed by a non-identifier character.
  bool accept_word(std::string_view w) {
    if (!peek(w)) return false;
    std::size_t end = pos_ + w.size();
    if (end < s_.size() && ident_char(s_[end])) return false;
    pos_ = end;
    return true;
  }

  Formula parse_iff() {
    Formula lhs = parse_imp();
    while (accept("<->")) lhs = iff(lhs, parse_imp());
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept("->")) return implies(lhs, parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept("|")) lhs = disj(lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept("&")) lhs = conj(lhs, parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    if (accept("~")) return neg(parse_unary());
    if (accept("<>")) return diamond(parse_unary());
    if (accept("[]")) return neg(diamond(neg(parse_unary())));
    if (accept_word("A")) return univ(parse_unary());
    if (accept("@")) {
      std::string name = parse_nominal_name();
      return sat(name, parse_unary());
    }
    if (auto cmp = try_comparison()) return *cmp;
    return parse_primary();
  }

  std::string parse_nominal_name() {
    expect("'");
    std::size_t start = pos_;
    while (pos_ < s_.size() && (ident_char(s_[pos_]) || s_[pos_] == '#')) ++pos_;
    if (pos_ == start) fail("expected nominal name");
    return std::string(s_.substr(start, pos_ - start));
  }

  Formula parse_primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Formula f = parse_iff();
      expect(")");
      return f;
    }
    if (c == '\'') return nominal(parse_nominal_name());
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "true") return top();
      if (name == "false") return bot();
      return atom(name);
    }
    fail("expected formula");
  }

  // Arithmetic comparisons. A failed attempt restores the position and yields nullopt.

  std::optional<Formula> try_comparison() {
    skip_ws();
    std::size_t start = pos_;
    if (start >= s_.size()) return std::nullopt;
    char c = s_[start];
    bool may_start = std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '#' || c == '(' ||
                     (c == 'w' && start + 1 < s_.size() && s_[start + 1] == '(');
    if (!may_start) return std::nullopt;
    auto lhs = try_expr();
    if (!lhs) {
      pos_ = start;
      return std::nullopt;
    }
    std::size_t cmp_pos = pos_;
    auto cmp = try_comparator();
    if (!cmp) {
      pos_ = start;
      return std::nullopt;
    }
    auto [kind, modulus] = *cmp;
    auto rhs = try_expr();
    if (!rhs) fail("expected arithmetic expression after comparison");
    return build_atom(*lhs, kind, modulus, *rhs, cmp_pos);
  }

  std::optional<std::pair<Cmp, Int>> try_comparator() {
    skip_ws();
    if (peek("<->") || peek("<>")) return std::nullopt;
    if (accept(">=")) return std::pair{Cmp::Ge, Int(0)};
    if (accept("<=")) return std::pair{Cmp::Le, Int(0)};
    if (accept(">")) return std::pair{Cmp::Gt, Int(0)};
    if (accept("<")) return std::pair{Cmp::Lt, Int(0)};
    if (accept("=mod")) {
      skip_ws();
      std::size_t at = pos_;
      bool minus = accept("-");
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == start) fail("expected modulus");
      Int k(std::string(s_.substr(start, pos_ - start)));
      if (minus) k = -k;
      if (k <= 0) fail_at("modulus must be positive", at);
      expect("=");
      return std::pair{Cmp::Mod, k};
    }
    if (accept("=")) return std::pair{Cmp::Eq, Int(0)};
    return std::nullopt;
  }

  std::optional<Expr> try_expr() {
    auto first = try_term();
    if (!first) return std::nullopt;
    Expr e = std::move(*first);
    while (true) {
      skip_ws();
      std::size_t save = pos_;
      bool minus;
      if (accept("->")) {
        pos_ = save;
        break;
      }
      if (accept("+")) {
        minus = false;
      } else if (accept("-")) {
        minus = true;
      } else {
        break;
      }
      auto t = try_term();
      if (!t) {
        pos_ = save;
        return std::nullopt;
      }
      Expr add = minus ? negate(std::move(*t)) : std::move(*t);
      e.insert(e.end(), add.begin(), add.end());
    }
    return e;
  }

  std::optional<Expr> try_term() {
    auto first = try_factor();
    if (!first) return std::nullopt;
    Expr e = std::move(*first);
    while (accept("*")) {
      auto f = try_factor();
      if (!f) return std::nullopt;
      e = multiply(e, *f);
    }
    return e;
  }

  std::optional<Expr> try_factor() {
    skip_ws();
    if (pos_ >= s_.size()) return std::nullopt;
    char c = s_[pos_];
    if (c == '-' && !peek("->")) {
      ++pos_;
      auto f = try_factor();
      if (!f) return std::nullopt;
      return negate(std::move(*f));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string text(s_.substr(start, pos_ - start));
      std::size_t save = pos_;
      if (accept("/")) {
        skip_ws();
        std::size_t dstart = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == dstart) {
          pos_ = save;
        } else {
          std::string den(s_.substr(dstart, pos_ - dstart));
          if (Int(den) == 0) fail_at("division by zero", dstart);
          text += "/" + den;
        }
      }
      return Expr{Monom{parse_rational(text), {}}};
    }
    if (c == '#' || (c == 'w' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '(')) {
      bool weight = c == 'w';
      ++pos_;
      expect("(");
      Formula arg = parse_iff();
      expect(")");
      return Expr{Monom{Rat(1), {Measure{weight, arg}}}};
    }
    if (c == '(') {
      std::size_t save = pos_;
      ++pos_;
      auto e = try_expr();
      if (!e || !accept(")")) {
        pos_ = save;
        return std::nullopt;
      }
      return e;
    }
    return std::nullopt;
  }

  Formula build_atom(const Expr& lhs, Cmp cmp, const Int& modulus, const Expr& rhs, std::size_t at) {
    Expr diff = lhs;
    Expr nr = negate(rhs);
    diff.insert(diff.end(), nr.begin(), nr.end());

    bool any_count = false, any_weight = false;
    for (const auto& m : diff)
      for (const auto& f : m.factors) (f.weight ? any_weight : any_count) = true;
    if (any_count && any_weight) fail_at("comparison mixes #() and w()", at);

    if (any_weight) {
      if (cmp == Cmp::Mod) fail_at("congruence on weights", at);
      std::vector<Formula> args;
      Polynomial p;
      for (const auto& m : diff) {
        Polynomial t = Polynomial::constant(m.coeff);
        for (const auto& f : m.factors) {
          auto it = std::find(args.begin(), args.end(), f.arg);
          std::uint32_t idx = static_cast<std::uint32_t>(it - args.begin());
          if (it == args.end()) args.push_back(f.arg);
          t = t * Polynomial::variable(idx);
        }
        p += t;
      }
      Polynomial np = -p;
      switch (cmp) {
        case Cmp::Ge:
          return prob(p, args);
        case Cmp::Le:
          return prob(np, args);
        case Cmp::Gt:
          return neg(prob(np, args));
        case Cmp::Lt:
          return neg(prob(p, args));
        case Cmp::Eq:
          return conj(prob(p, args), prob(np, args));
        case Cmp::Mod:
          break;
      }
      fail_at("bad comparison", at);
    }

    // Presburger (or constant) comparison: sum of terms REL bound.
    std::vector<std::pair<Int, Formula>> terms;
    Rat constant = 0;
    for (const auto& m : diff) {
      if (m.factors.size() > 1) fail_at("non-linear #() term", at);
      if (m.factors.empty()) {
        constant += m.coeff;
        continue;
      }
      if (!is_integral(m.coeff)) fail_at("non-integer coefficient in #() term", at);
      terms.emplace_back(m.coeff.get_num(), m.factors[0].arg);
    }
    Rat bound_r = -constant;
    if (terms.empty() && cmp != Cmp::Mod) {
      bool holds = false;
      switch (cmp) {
        case Cmp::Lt: holds = 0 < bound_r; break;
        case Cmp::Le: holds = 0 <= bound_r; break;
        case Cmp::Gt: holds = 0 > bound_r; break;
        case Cmp::Ge: holds = 0 >= bound_r; break;
        case Cmp::Eq: holds = bound_r == 0; break;
        case Cmp::Mod: break;
      }
      return holds ? top() : bot();
    }
    if (!is_integral(bound_r)) fail_at("non-integer constant in #() comparison", at);
    Int bound = bound_r.get_num();
    switch (cmp) {
      case Cmp::Lt:
        return presburger(std::move(terms), Rel::Lt, bound);
      case Cmp::Le:
        return presburger(std::move(terms), Rel::Lt, bound + 1);
      case Cmp::Gt:
        return presburger(std::move(terms), Rel::Gt, bound);
      case Cmp::Ge:
        return presburger(std::move(terms), Rel::Gt, bound - 1);
      case Cmp::Eq:
        return presburger(std::move(terms), Rel::Eq, bound);
      case Cmp::Mod:
        return presburger(std::move(terms), Rel::Mod, bound, modulus);
    }
    fail_at("bad comparison", at);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace coalgsat
