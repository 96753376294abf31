#include "gcalc/parser.hpp"

#include <cctype>

namespace gcalc {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ExprAst run() {
    auto e = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  const std::string& text_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(static_cast<int>(pos_) + 1, what);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprAst node(ExprNode::Kind k, int col) {
    auto n = std::make_unique<ExprNode>();
    n->kind = k;
    n->column = col;
    return n;
  }

  ExprAst expr() {
    auto lhs = term();
    for (;;) {
      int col = static_cast<int>(pos_) + 1;
      if (eat('+')) {
        auto n = node(ExprNode::Kind::Add, col);
        n->lhs = std::move(lhs);
        n->rhs = term();
        lhs = std::move(n);
      } else if (eat('-')) {
        auto n = node(ExprNode::Kind::Sub, col);
        n->lhs = std::move(lhs);
        n->rhs = term();
        lhs = std::move(n);
      } else {
        return lhs;
      }
    }
  }

  ExprAst term() {
    auto lhs = unary();
    while (true) {
      int col = static_cast<int>(pos_) + 1;
      if (!eat('*')) return lhs;
      auto n = node(ExprNode::Kind::Mul, col);
      n->lhs = std::move(lhs);
      n->rhs = unary();
      lhs = std::move(n);
    }
  }

  ExprAst unary() {
    int col = static_cast<int>(pos_) + 1;
    if (eat('-')) {
      auto n = node(ExprNode::Kind::Neg, col);
      n->lhs = unary();
      return n;
    }
    return power();
  }

  ExprAst power() {
    auto base = atom();
    int col = static_cast<int>(pos_) + 1;
    if (eat('^')) {
      auto n = node(ExprNode::Kind::Pow, col);
      n->lhs = std::move(base);
      n->expo = static_cast<int>(integer("exponent"));
      return n;
    }
    return base;
  }

  long integer(const char* what) {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    return std::stol(text_.substr(start, pos_ - start));
  }

  ExprAst atom() {
    char c = peek();
    int col = static_cast<int>(pos_) + 1;
    if (isdigit(static_cast<unsigned char>(c))) return rational(col);
    if (c == 'u' || c == 'v' || c == 'z') return generator(col);
    if (eat('(')) {
      auto e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail("expected a rational, a generator or '('");
  }

  ExprAst rational(int col) {
    long num = integer("number");
    auto n = node(ExprNode::Kind::Num, col);
    if (eat('/')) {
      long den = integer("denominator");
      if (den == 0) fail("zero denominator");
      n->num = rat(num, den);
    } else {
      n->num = Rat(num);
    }
    return n;
  }

  ExprAst generator(int col) {
    char name = text_[pos_++];
    int gen;
    if (pos_ < text_.size() &&
        isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (name == 'v') fail("'v' takes no index (it is u2)");
      int digit = text_[pos_++] - '0';
      if (digit == 0) fail("generator indices start at 1");
      gen = digit - 1;
    } else {
      gen = (name == 'v') ? 1 : 0;
    }
    int ord = 0;
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      while (pos_ < text_.size() && text_[pos_] == '\'') {
        ++ord;
        ++pos_;
      }
    } else if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      ord = static_cast<int>(integer("derivative order"));
      if (!eat(')')) fail("expected ')' after derivative order");
    }
    auto n = node(ExprNode::Kind::Var, col);
    n->var = DiffVar{gen, ord};
    return n;
  }
};

}  // namespace

ExprAst parse_expr(const std::string& text) { return Parser(text).run(); }

DiffPoly eval_expr(const ExprNode& n, int max_gens) {
  switch (n.kind) {
    case ExprNode::Kind::Num:
      return DiffPoly(n.num);
    case ExprNode::Kind::Var:
      if (n.var.gen >= max_gens)
        throw UnknownGenerator("u" + std::to_string(n.var.gen + 1));
      return DiffPoly::var(n.var);
    case ExprNode::Kind::Add:
      return eval_expr(*n.lhs, max_gens) + eval_expr(*n.rhs, max_gens);
    case ExprNode::Kind::Sub:
      return eval_expr(*n.lhs, max_gens) - eval_expr(*n.rhs, max_gens);
    case ExprNode::Kind::Mul:
      return eval_expr(*n.lhs, max_gens) * eval_expr(*n.rhs, max_gens);
    case ExprNode::Kind::Neg:
      return -eval_expr(*n.lhs, max_gens);
    case ExprNode::Kind::Pow:
      return eval_expr(*n.lhs, max_gens).pow(n.expo);
  }
  throw std::logic_error("unreachable");
}

}  // namespace gcalc
