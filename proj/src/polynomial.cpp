#include "coalgsat/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace coalgsat {

Rat parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad number: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

unsigned monomial_degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

}  // namespace

Polynomial Polynomial::constant(const Rat& c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(std::uint32_t index) {
  Polynomial p;
  p.add_term({{index, 1}}, Rat(1));
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

std::uint32_t Polynomial::arity() const {
  std::uint32_t n = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) n = std::max(n, v + 1);
  return n;
}

Rat Polynomial::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat Polynomial::linear_coefficient(std::uint32_t var) const {
  auto it = terms_.find(Monomial{{var, 1}});
  return it == terms_.end() ? Rat(0) : it->second;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const { return scaled(Rat(-1)); }

Polynomial Polynomial::scaled(const Rat& c) const {
  Polynomial r;
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(multiply(ma, mb), ca * cb);
  return r;
}

Rat Polynomial::evaluate(std::span<const Rat> point) const {
  Rat sum = 0;
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (const auto& [v, e] : m) {
      if (v >= point.size()) throw std::out_of_range("polynomial variable out of range");
      for (std::uint32_t k = 0; k < e; ++k) t *= point[v];
    }
    sum += t;
  }
  return sum;
}

Interval interval_mul(const Interval& a, const Interval& b) {
  Rat p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Interval r{p[0], p[0]};
  for (const auto& v : p) {
    if (v < r.lo) r.lo = v;
    if (v > r.hi) r.hi = v;
  }
  return r;
}

Interval interval_pow(const Interval& x, std::uint32_t exponent) {
  if (exponent == 0) return {Rat(1), Rat(1)};
  Rat lo = 1, hi = 1;
  for (std::uint32_t k = 0; k < exponent; ++k) {
    lo *= x.lo;
    hi *= x.hi;
  }
  if (exponent % 2 == 1) return {lo, hi};
  // Even power: lo^e and hi^e are both non-negative.
  if (x.lo >= 0) return {lo, hi};
  if (x.hi <= 0) return {hi, lo};
  return {Rat(0), std::max(lo, hi)};
}

Interval Polynomial::evaluate(std::span<const Interval> box) const {
  Interval sum{Rat(0), Rat(0)};
  for (const auto& [m, c] : terms_) {
    Interval t{c, c};
    for (const auto& [v, e] : m) {
      if (v >= box.size()) throw std::out_of_range("polynomial variable out of range");
      t = interval_mul(t, interval_pow(box[v], e));
    }
    sum.lo += t.lo;
    sum.hi += t.hi;
  }
  return sum;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> replacement) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(c);
    for (const auto& [v, e] : m) {
      if (v >= replacement.size()) throw std::out_of_range("substitution too short");
      for (std::uint32_t k = 0; k < e; ++k) t = t * replacement[v];
    }
    r += t;
  }
  return r;
}

Polynomial Polynomial::renamed(std::span<const std::uint32_t> mapping) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    Monomial nm;
    for (const auto& [v, e] : m) nm = multiply(nm, Monomial{{mapping[v], e}});
    r.add_term(nm, c);
  }
  return r;
}

std::string Polynomial::render(const std::function<std::string(std::uint32_t)>& var_name) const {
  if (terms_.empty()) return "0";
  // Higher-degree monomials first, constant last.
  std::vector<std::pair<Monomial, Rat>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return monomial_degree(a.first) > monomial_degree(b.first);
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    if (!first) out += " + ";
    first = false;
    if (m.empty()) {
      out += to_string(c);
      continue;
    }
    out += to_string(c);
    for (const auto& [v, e] : m)
      for (std::uint32_t k = 0; k < e; ++k) out += "*" + var_name(v);
  }
  return out;
}

}  // namespace coalgsat
