// Exact rational scalars for the whole library.
//
// Rat is GMP's mpq_class: arbitrary precision, always stored as a reduced
// fraction with positive denominator (mpq canonical form). No floating
// point appears anywhere in the library.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gcalc {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p", "-p", "p/q" with optional whitespace around tokens.
Rat rat_from_string(const std::string& s);

// Prints "p" or "p/q" (q > 1), never a decimal.
std::string rat_to_string(const Rat& r);

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

// Binomial coefficient C(n, k) as an exact rational (integer valued).
Rat rat_binomial(long n, long k);

// n! as an exact rational (integer valued).
Rat rat_factorial(long n);

}  // namespace gcalc
