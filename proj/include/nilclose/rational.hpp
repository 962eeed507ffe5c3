#pragma once

#include <gmpxx.h>

#include <string>

namespace nilclose {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "p/q" or a decimal like "1.25" (exact).  Throws MathError on a
// zero denominator or trailing junk.
Rational parse_rational(const std::string& s);

// Canonical "p" / "p/q" form.
std::string rational_str(const Rational& q);

Integer rational_floor(const Rational& q);

inline int sgn(const Rational& q) { return sgn(q.get_num()); }

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace nilclose
