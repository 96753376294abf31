// Differential polynomial algebra V = F[u_i^(n)] with the total derivative
// del u_i^(n) = u_i^(n+1), formal partials, lambda-action, Euler operator
// and a decision procedure for membership in del(V).
//
// Everything is exact over Rat. Values are immutable in spirit: all
// operations return fresh canonical polynomials.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcalc/rat.hpp"

namespace gcalc {

// The variable u_gen^(ord). gen is 0-based internally, printed 1-based.
struct DiffVar {
  int gen = 0;
  int ord = 0;
  friend auto operator<=>(const DiffVar&, const DiffVar&) = default;
};

// Canonical monomial: factors sorted by (gen, ord), exponents > 0.
using Monomial = std::vector<std::pair<DiffVar, int>>;

class DiffPoly {
 public:
  DiffPoly() = default;
  explicit DiffPoly(const Rat& c);  // constant
  static DiffPoly var(DiffVar v);   // single variable
  static DiffPoly var(int gen, int ord) { return var(DiffVar{gen, ord}); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_term() const;

  const std::map<Monomial, Rat>& terms() const { return terms_; }

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(const Rat& c, const DiffPoly& a);
  DiffPoly pow(int e) const;  // e >= 0

  friend bool operator==(const DiffPoly& a, const DiffPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator<(const DiffPoly& a, const DiffPoly& b);

  // Largest derivative order appearing, -1 for constants.
  int max_order() const;
  // Largest generator index appearing, -1 for constants.
  int max_gen() const;
  // Variables actually appearing.
  std::vector<DiffVar> support() const;
  // Value under the substitution u_i^(n) -> 0 for all i, n.
  Rat eval_at_zero() const;

  std::string str() const;

  // Terms are kept canonical: no zero coefficients, sorted monomials.
  void add_term(const Monomial& m, const Rat& c);

 private:
  std::map<Monomial, Rat> terms_;
};

// del(f): the unique derivation with del u_i^(n) = u_i^(n+1).
DiffPoly total_derivative(const DiffPoly& f);
DiffPoly total_derivative(const DiffPoly& f, int times);

// Formal partial d f / d u_gen^(ord).
DiffPoly partial_derivative(const DiffPoly& f, int gen, int ord);
DiffPoly partial_derivative(const DiffPoly& f, DiffVar v);

// Finite lambda-coefficient tensor: arity k, multi-index -> coefficient.
struct LambdaPoly {
  int arity = 1;
  std::map<std::vector<int>, DiffPoly> coeffs;

  void add(const std::vector<int>& mindex, const DiffPoly& p);
  bool is_zero() const { return coeffs.empty(); }
  int max_total_degree() const;
  friend bool operator==(const LambdaPoly&, const LambdaPoly&) = default;
  std::string str() const;  // lambda, mu naming for arity <= 2
};

// u_{gen lambda} f = sum_n lambda^n df/du_gen^(n)  (arity-1 result).
LambdaPoly lambda_action(int gen, const DiffPoly& f);

// Euler operator: delta f / delta u_gen = sum_n (-del)^n df/du_gen^(n).
DiffPoly variational_derivative(const DiffPoly& f, int gen);

// Membership in del(V) for V = R_l, with witness.
// f in del(V) iff every variational derivative vanishes and f has zero
// constant term; the witness g with del(g) = f is built by repeatedly
// stripping the highest-order variable.
struct ExactnessResult {
  bool exact = false;
  std::optional<DiffPoly> witness;
};
ExactnessResult is_total_derivative(const DiffPoly& f);

// Equality of the cosets of f and g in V/del(V).
bool quotient_equal(const DiffPoly& f, const DiffPoly& g);

}  // namespace gcalc
