#pragma once

#include <stdexcept>
#include <string>

namespace nilclose {

// Invalid mathematical input: bad field spec, wrong shapes, violated preconditions.
struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Division by zero, or by a zero divisor of Q[x]/(min_poly).  When a nontrivial
// factor of the minimal polynomial is discovered it is carried along so callers
// can report the defective field spec.
struct ZeroDivisorError : MathError {
  std::string factor;
  ZeroDivisorError(const std::string& msg, std::string discovered_factor)
      : MathError(msg), factor(std::move(discovered_factor)) {}
};

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(msg), line(l), column(c) {}
};

// Quadrature ran out of its evaluation budget before reaching the tolerance.
struct QuadratureError : std::runtime_error {
  double achieved_error;
  QuadratureError(const std::string& msg, double err)
      : std::runtime_error(msg), achieved_error(err) {}
};

}  // namespace nilclose
