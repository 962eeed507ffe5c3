#include "nilclose/rational.hpp"

#include <cctype>

#include "nilclose/errors.hpp"

namespace nilclose {

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw MathError("empty rational literal");

  auto dot = t.find('.');
  if (dot != std::string::npos) {
    if (t.find('/') != std::string::npos)
      throw MathError("rational literal mixes '.' and '/': " + s);
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    size_t frac_len = t.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw MathError("bad rational literal: " + s);
    try {
      Integer num(digits, 10);
      Integer den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
      Rational q(num, den);
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      throw MathError("bad rational literal: " + s);
    }
  }

  try {
    Rational q(t);
    if (q.get_den() == 0) throw MathError("zero denominator in rational: " + s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw MathError("bad rational literal: " + s);
  }
}

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer rational_floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

}  // namespace nilclose
