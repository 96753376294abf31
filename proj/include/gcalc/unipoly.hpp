// Dense univariate polynomials over Rat, used for the F[del]-module
// structure of Lie conformal algebras.
#pragma once

#include <string>
#include <vector>

#include "gcalc/rat.hpp"

namespace gcalc {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(const Rat& c) {
    if (!gcalc::is_zero(c)) c_ = {c};
  }
  static UniPoly monomial(int deg, const Rat& c = Rat(1)) {
    UniPoly p;
    if (gcalc::is_zero(c)) return p;
    p.c_.assign(deg + 1, Rat(0));
    p.c_[deg] = c;
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if 0
  bool is_zero() const { return c_.empty(); }
  Rat coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0);
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < r.c_.size(); ++i)
      r.c_[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    r.trim();
    return r;
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    return a + (-b);
  }
  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
  }
  friend UniPoly operator*(const Rat& s, const UniPoly& a) {
    UniPoly r = a;
    for (auto& c : r.c_) c = s * c;
    r.trim();
    return r;
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.c_ == b.c_;
  }

  // p(x) -> p(x + s) for a scalar shift is not needed; what the brackets
  // need is substitution of the variable by (-x - c) style affine maps,
  // handled at the call sites via compose_neg_shift.

  std::string str(const std::string& var = "d") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (gcalc::is_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += rat_to_string(c_[i]);
      if (i > 0) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && gcalc::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<Rat> c_;  // c_[i] multiplies x^i
};

}  // namespace gcalc
