#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coalgsat/numeric.hpp"

namespace coalgsat {

// Sparse monomial: (variable, exponent) pairs sorted by variable, exponents > 0.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// Closed rational interval [lo, hi].
struct Interval {
  Rat lo;
  Rat hi;
};

// Multivariate polynomial with exact rational coefficients.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial constant(const Rat& c);
  static Polynomial variable(std::uint32_t index);

  const std::map<Monomial, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;
  // One past the largest variable index that occurs.
  std::uint32_t arity() const;
  Rat constant_term() const;
  // Coefficient of the degree-one monomial of `var`.
  Rat linear_coefficient(std::uint32_t var) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rat& c) const;
  Polynomial& operator+=(const Polynomial& o);

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator<(const Polynomial& o) const { return terms_ < o.terms_; }

  Rat evaluate(std::span<const Rat> point) const;
  Interval evaluate(std::span<const Interval> box) const;
  // Replaces variable i by replacement[i].
  Polynomial substitute(std::span<const Polynomial> replacement) const;
  // Renames variable i to mapping[i].
  Polynomial renamed(std::span<const std::uint32_t> mapping) const;

  // Human-readable form with a caller-supplied variable printer, e.g. "2*w(a)*w(b) + -1/2".
  std::string render(const std::function<std::string(std::uint32_t)>& var_name) const;

 private:
  void add_term(const Monomial& m, const Rat& c);
  std::map<Monomial, Rat> terms_;
};

Interval interval_pow(const Interval& x, std::uint32_t exponent);
Interval interval_mul(const Interval& a, const Interval& b);

}  // namespace coalgsat
