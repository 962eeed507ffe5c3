#pragma once

#include <string>
#include <vector>

#include "nilclose/poly.hpp"

namespace nilclose {

// Arithmetic expression in the input grammar:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' nonneg-int)?
//   atom   := rational | 'theta' | var | '(' expr ')' | 'ln1p(' var ')'
//   var    := 'x' digit+ | 't' | 's'
//
// A '-' before the first term is accepted.  Rational literals are unsigned;
// there is no division operator.  Recip nodes never come from the parser,
// only from differentiation (the derivative of ln1p), so derivative output
// may fall outside the grammar.
struct Expr {
  enum class Kind { Number, Theta, Var, Sum, Product, Power, Ln1p, Recip };

  Kind kind = Kind::Number;
  Rational number;         // Number
  std::string var;         // Var name; Ln1p argument
  long exponent = 0;       // Power
  std::vector<Expr> kids;  // Sum and Product operands; Power and Recip base
  std::vector<int> signs;  // Sum only, +1 or -1 per operand

  bool operator==(const Expr& o) const;
  bool operator!=(const Expr& o) const { return !(*this == o); }
};

// Throws ParseError (line 1, 1-based column) on syntax errors.
Expr parse_expression(const std::string& text);

// Canonical text.  For parser output, parsing the emitted text gives back an
// identical tree.
std::string emit_expression(const Expr& e);

// Variable names referenced by e, in order of first appearance.
std::vector<std::string> expression_vars(const Expr& e);

// Exact polynomial with variables numbered by their position in vars.
// Rejects ln1p and Recip (numeric curves only) and names missing from vars.
Polynomial expression_to_polynomial(
    const Expr& e, const FieldPtr& f, const std::vector<std::string>& vars,
    int degree_cap = Polynomial::kDefaultDegreeCap);

// Floating evaluation; vals[i] is the value of vars[i].
double eval_expression(const Expr& e, double theta,
                       const std::vector<std::string>& vars,
                       const std::vector<double>& vals);

// Partial derivative, defined for the whole grammar plus Recip.
Expr differentiate(const Expr& e, const std::string& var);

}  // namespace nilclose
