// Text grammar for differential polynomials.
//
//   expr   := term (('+'|'-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := rational | generator | '(' expr ')'
//
// Generators: u1..u9 (aliases u = u1, v = u2; z, z1..z9 name the same
// indices, used for coefficient algebras). Derivatives: apostrophes (u'')
// or an explicit order u1(5). Rationals: 3/2. Whitespace-insensitive.
#pragma once

#include <memory>
#include <string>

#include "gcalc/diffpoly.hpp"
#include "gcalc/errors.hpp"

namespace gcalc {

struct ExprNode {
  enum class Kind { Num, Var, Add, Sub, Mul, Neg, Pow };
  Kind kind;
  int column = 0;  // 1-based position of the token that started this node
  Rat num;
  DiffVar var;
  int expo = 0;
  std::unique_ptr<ExprNode> lhs, rhs;
};

using ExprAst = std::unique_ptr<ExprNode>;

// Throws SyntaxError with a 1-based column on malformed input.
ExprAst parse_expr(const std::string& text);

// Throws UnknownGenerator if a generator index exceeds max_gens.
DiffPoly eval_expr(const ExprNode& node, int max_gens = 9);

inline DiffPoly parse_diffpoly(const std::string& text, int max_gens = 9) {
  return eval_expr(*parse_expr(text), max_gens);
}

}  // namespace gcalc
