#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace coalgsat {

// Arbitrary-precision integers and rationals. All solver arithmetic is exact.
using Int = mpz_class;
using Rat = mpq_class;

inline std::string to_string(const Int& v) { return v.get_str(); }

// "p/q" for non-integers, "p" otherwise.
inline std::string to_string(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Int floor_of(const Rat& v) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return q;
}

inline Int ceil_of(const Rat& v) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return q;
}

inline bool is_integral(const Rat& v) { return v.get_den() == 1; }

// Non-negative remainder of a modulo k (k > 0).
inline Int mod_floor(const Int& a, const Int& k) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), k.get_mpz_t());
  return r;
}

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on bad input.
Rat parse_rational(std::string_view text);

}  // namespace coalgsat
