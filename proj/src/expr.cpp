#include "nilclose/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "nilclose/errors.hpp"

namespace nilclose {

bool Expr::operator==(const Expr& o) const {
  return kind == o.kind && cmp(number, o.number) == 0 && var == o.var &&
         exponent == o.exponent && kids == o.kids && signs == o.signs;
}

namespace {

struct Token {
  enum Type { Num, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };
  Type type;
  Rational num;
  std::string text;
  int col = 0;  // 1-based
};

[[noreturn]] void fail_at(const std::string& msg, int col) {
  throw ParseError(msg, 1, col);
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && (s[i] == '/' || s[i] == '.')) {
        char sep = s[i];
        ++i;
        size_t tail = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == tail)
          fail_at(std::string("expected digits after '") + sep + "'", col);
      }
      std::string lit = s.substr(start, i - start);
      Rational q;
      try {
        q = parse_rational(lit);
      } catch (const MathError& e) {
        fail_at(e.what(), col);
      }
      out.push_back({Token::Num, q, lit, col});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      out.push_back({Token::Ident, Rational(), s.substr(start, i - start), col});
      continue;
    }
    Token::Type t;
    switch (c) {
      case '+': t = Token::Plus; break;
      case '-': t = Token::Minus; break;
      case '*': t = Token::Star; break;
      case '^': t = Token::Caret; break;
      case '(': t = Token::LParen; break;
      case ')': t = Token::RParen; break;
      default:
        fail_at(std::string("unexpected character '") + c + "'", col);
    }
    out.push_back({t, Rational(), std::string(1, c), col});
    ++i;
  }
  out.push_back({Token::End, Rational(), "", static_cast<int>(s.size()) + 1});
  return out;
}

bool is_var_name(const std::string& s) {
  if (s == "t" || s == "s") return true;
  if (s.size() < 2 || s[0] != 'x') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

struct Parser {
  const std::vector<Token>& toks;
  size_t i = 0;

  const Token& peek() const { return toks[i]; }
  const Token& take() { return toks[i++]; }

  Expr parse_expr() {
    int first_sign = 1;
    if (peek().type == Token::Minus) {
      take();
      first_sign = -1;
    }
    Expr first = parse_term();
    if (first_sign == 1 && peek().type != Token::Plus &&
        peek().type != Token::Minus)
      return first;
    Expr sum;
    sum.kind = Expr::Kind::Sum;
    sum.kids.push_back(std::move(first));
    sum.signs.push_back(first_sign);
    while (peek().type == Token::Plus || peek().type == Token::Minus) {
      sum.signs.push_back(take().type == Token::Plus ? 1 : -1);
      sum.kids.push_back(parse_term());
    }
    return sum;
  }

  Expr parse_term() {
    Expr first = parse_factor();
    if (peek().type != Token::Star) return first;
    Expr prod;
    prod.kind = Expr::Kind::Product;
    prod.kids.push_back(std::move(first));
    while (peek().type == Token::Star) {
      take();
      prod.kids.push_back(parse_factor());
    }
    return prod;
  }

  Expr parse_factor() {
    Expr base = parse_atom();
    if (peek().type != Token::Caret) return base;
    take();
    const Token& t = peek();
    if (t.type != Token::Num || t.num.get_den() != 1 || sgn(t.num) < 0)
      fail_at("exponent must be a nonnegative integer", t.col);
    if (t.num.get_num() > 4096) fail_at("exponent too large", t.col);
    take();
    Expr p;
    p.kind = Expr::Kind::Power;
    p.exponent = t.num.get_num().get_si();
    p.kids.push_back(std::move(base));
    return p;
  }

  Expr parse_atom() {
    const Token& t = peek();
    switch (t.type) {
      case Token::Num: {
        take();
        Expr e;
        e.kind = Expr::Kind::Number;
        e.number = t.num;
        return e;
      }
      case Token::Ident: {
        take();
        if (t.text == "theta") {
          Expr e;
          e.kind = Expr::Kind::Theta;
          return e;
        }
        if (t.text == "ln1p") {
          expect(Token::LParen, "expected '(' after ln1p");
          const Token& arg = peek();
          if (arg.type != Token::Ident || !is_var_name(arg.text))
            fail_at("ln1p takes a single variable", arg.col);
          take();
          expect(Token::RParen, "expected ')'");
          Expr e;
          e.kind = Expr::Kind::Ln1p;
          e.var = arg.text;
          return e;
        }
        if (is_var_name(t.text)) {
          Expr e;
          e.kind = Expr::Kind::Var;
          e.var = t.text;
          return e;
        }
        fail_at("unknown symbol '" + t.text + "'", t.col);
      }
      case Token::LParen: {
        take();
        Expr inner = parse_expr();
        expect(Token::RParen, "expected ')'");
        return inner;
      }
      default:
        fail_at("expected a value", t.col);
    }
  }

  void expect(Token::Type type, const std::string& msg) {
    if (peek().type != type) fail_at(msg, peek().col);
    take();
  }
};

// Parenthesization levels for emission.
bool atom_like(const Expr& e) {
  return e.kind == Expr::Kind::Number || e.kind == Expr::Kind::Theta ||
         e.kind == Expr::Kind::Var || e.kind == Expr::Kind::Ln1p;
}

void emit(const Expr& e, std::string& out) {
  auto wrapped = [&out](const Expr& k, bool need) {
    if (need) out += '(';
    emit(k, out);
    if (need) out += ')';
  };
  switch (e.kind) {
    case Expr::Kind::Number:
      out += rational_str(e.number);
      return;
    case Expr::Kind::Theta:
      out += "theta";
      return;
    case Expr::Kind::Var:
      out += e.var;
      return;
    case Expr::Kind::Ln1p:
      out += "ln1p(" + e.var + ")";
      return;
    case Expr::Kind::Sum:
      for (size_t k = 0; k < e.kids.size(); ++k) {
        if (k == 0) {
          if (e.signs[0] < 0) out += '-';
        } else {
          out += e.signs[k] < 0 ? " - " : " + ";
        }
        wrapped(e.kids[k], e.kids[k].kind == Expr::Kind::Sum);
      }
      return;
    case Expr::Kind::Product:
      for (size_t k = 0; k < e.kids.size(); ++k) {
        if (k) out += '*';
        wrapped(e.kids[k], e.kids[k].kind == Expr::Kind::Sum ||
                               e.kids[k].kind == Expr::Kind::Recip);
      }
      return;
    case Expr::Kind::Power:
      wrapped(e.kids[0], !atom_like(e.kids[0]));
      out += '^';
      out += std::to_string(e.exponent);
      return;
    case Expr::Kind::Recip:
      // No grammar form; printed for diagnostics only.
      out += "1/";
      wrapped(e.kids[0], true);
      return;
  }
}

void collect_vars(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::Var || e.kind == Expr::Kind::Ln1p) {
    if (std::find(out.begin(), out.end(), e.var) == out.end())
      out.push_back(e.var);
  }
  for (const Expr& k : e.kids) collect_vars(k, out);
}

int var_index(const std::string& name, const std::vector<std::string>& vars) {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end())
    throw MathError("variable '" + name + "' is not available here");
  return static_cast<int>(it - vars.begin());
}

Expr make_number(long v) {
  Expr e;
  e.kind = Expr::Kind::Number;
  e.number = Rational(v);
  return e;
}

Expr make_product(std::vector<Expr> factors) {
  std::vector<Expr> kept;
  for (Expr& f : factors) {
    if (f.kind == Expr::Kind::Number && cmp(f.number, Rational(1)) == 0)
      continue;
    kept.push_back(std::move(f));
  }
  if (kept.empty()) return make_number(1);
  if (kept.size() == 1) return kept[0];
  Expr p;
  p.kind = Expr::Kind::Product;
  p.kids = std::move(kept);
  return p;
}

bool is_zero_number(const Expr& e) {
  return e.kind == Expr::Kind::Number && sgn(e.number) == 0;
}

}  // namespace

Expr parse_expression(const std::string& text) {
  std::vector<Token> toks = lex(text);
  Parser p{toks};
  Expr e = p.parse_expr();
  if (p.peek().type != Token::End)
    fail_at("unexpected trailing input", p.peek().col);
  return e;
}

std::string emit_expression(const Expr& e) {
  std::string out;
  emit(e, out);
  return out;
}

std::vector<std::string> expression_vars(const Expr& e) {
  std::vector<std::string> out;
  collect_vars(e, out);
  return out;
}

Polynomial expression_to_polynomial(const Expr& e, const FieldPtr& f,
                                    const std::vector<std::string>& vars,
                                    int degree_cap) {
  int n = static_cast<int>(vars.size());
  switch (e.kind) {
    case Expr::Kind::Number:
      return Polynomial::constant(f, n, Scalar::from_rational(f, e.number),
                                  degree_cap);
    case Expr::Kind::Theta:
      return Polynomial::constant(f, n, Scalar::theta(f), degree_cap);
    case Expr::Kind::Var:
      return Polynomial::variable(f, n, var_index(e.var, vars), degree_cap);
    case Expr::Kind::Sum: {
      Polynomial acc(f, n, degree_cap);
      for (size_t k = 0; k < e.kids.size(); ++k) {
        Polynomial p = expression_to_polynomial(e.kids[k], f, vars, degree_cap);
        acc = e.signs[k] < 0 ? acc - p : acc + p;
      }
      return acc;
    }
    case Expr::Kind::Product: {
      Polynomial acc = expression_to_polynomial(e.kids[0], f, vars, degree_cap);
      for (size_t k = 1; k < e.kids.size(); ++k)
        acc = acc * expression_to_polynomial(e.kids[k], f, vars, degree_cap);
      return acc;
    }
    case Expr::Kind::Power:
      return expression_to_polynomial(e.kids[0], f, vars, degree_cap)
          .pow(static_cast<unsigned>(e.exponent));
    case Expr::Kind::Ln1p:
    case Expr::Kind::Recip:
      throw MathError("ln1p is only available for numeric curves");
  }
  throw MathError("corrupt expression node");
}

double eval_expression(const Expr& e, double theta,
                       const std::vector<std::string>& vars,
                       const std::vector<double>& vals) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return to_double(e.number);
    case Expr::Kind::Theta:
      return theta;
    case Expr::Kind::Var:
      return vals[var_index(e.var, vars)];
    case Expr::Kind::Sum: {
      double acc = 0;
      for (size_t k = 0; k < e.kids.size(); ++k)
        acc += e.signs[k] * eval_expression(e.kids[k], theta, vars, vals);
      return acc;
    }
    case Expr::Kind::Product: {
      double acc = 1;
      for (const Expr& k : e.kids)
        acc *= eval_expression(k, theta, vars, vals);
      return acc;
    }
    case Expr::Kind::Power:
      return std::pow(eval_expression(e.kids[0], theta, vars, vals),
                      static_cast<double>(e.exponent));
    case Expr::Kind::Ln1p:
      return std::log1p(vals[var_index(e.var, vars)]);
    case Expr::Kind::Recip:
      return 1.0 / eval_expression(e.kids[0], theta, vars, vals);
  }
  throw MathError("corrupt expression node");
}

Expr differentiate(const Expr& e, const std::string& var) {
  switch (e.kind) {
    case Expr::Kind::Number:
    case Expr::Kind::Theta:
      return make_number(0);
    case Expr::Kind::Var:
      return make_number(e.var == var ? 1 : 0);
    case Expr::Kind::Sum: {
      Expr sum;
      sum.kind = Expr::Kind::Sum;
      for (size_t k = 0; k < e.kids.size(); ++k) {
        Expr d = differentiate(e.kids[k], var);
        if (is_zero_number(d)) continue;
        sum.kids.push_back(std::move(d));
        sum.signs.push_back(e.signs[k]);
      }
      if (sum.kids.empty()) return make_number(0);
      if (sum.kids.size() == 1 && sum.signs[0] == 1) return sum.kids[0];
      return sum;
    }
    case Expr::Kind::Product: {
      Expr sum;
      sum.kind = Expr::Kind::Sum;
      for (size_t k = 0; k < e.kids.size(); ++k) {
        Expr d = differentiate(e.kids[k], var);
        if (is_zero_number(d)) continue;
        std::vector<Expr> factors;
        for (size_t j = 0; j < e.kids.size(); ++j)
          factors.push_back(j == k ? d : e.kids[j]);
        sum.kids.push_back(make_product(std::move(factors)));
        sum.signs.push_back(1);
      }
      if (sum.kids.empty()) return make_number(0);
      if (sum.kids.size() == 1) return sum.kids[0];
      return sum;
    }
    case Expr::Kind::Power: {
      if (e.exponent == 0) return make_number(0);
      Expr d = differentiate(e.kids[0], var);
      if (is_zero_number(d)) return make_number(0);
      std::vector<Expr> factors;
      factors.push_back(make_number(e.exponent));
      if (e.exponent > 1) {
        Expr low;
        low.kind = Expr::Kind::Power;
        low.exponent = e.exponent - 1;
        low.kids.push_back(e.kids[0]);
        factors.push_back(std::move(low));
      }
      factors.push_back(std::move(d));
      return make_product(std::move(factors));
    }
    case Expr::Kind::Ln1p: {
      if (e.var != var) return make_number(0);
      Expr shifted;
      shifted.kind = Expr::Kind::Sum;
      shifted.signs = {1, 1};
      shifted.kids.push_back(make_number(1));
      Expr v;
      v.kind = Expr::Kind::Var;
      v.var = e.var;
      shifted.kids.push_back(std::move(v));
      Expr r;
      r.kind = Expr::Kind::Recip;
      r.kids.push_back(std::move(shifted));
      return r;
    }
    case Expr::Kind::Recip: {
      Expr d = differentiate(e.kids[0], var);
      if (is_zero_number(d)) return make_number(0);
      Expr sq;
      sq.kind = Expr::Kind::Power;
      sq.exponent = 2;
      sq.kids.push_back(e.kids[0]);
      Expr r;
      r.kind = Expr::Kind::Recip;
      r.kids.push_back(std::move(sq));
      Expr neg;
      neg.kind = Expr::Kind::Sum;
      neg.signs = {-1};
      neg.kids.push_back(make_product({std::move(d), std::move(r)}));
      return neg;
    }
  }
  throw MathError("corrupt expression node");
}

}  // namespace nilclose
