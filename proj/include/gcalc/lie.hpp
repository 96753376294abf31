// Chains Delta_h(g, A) = A (x) Lambda^h g and cochains
// Delta^k(g, A) = Hom(Lambda^k g, A) for a finite-dimensional Lie algebra g
// acting by derivations on a polynomial algebra A, with the
// Chevalley-Eilenberg differential, contraction, Lie derivative and the
// Schouten bracket. Everything is exact and fully decidable; this is the
// discrete testbed the generic checkers run against.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gcalc/calculus.hpp"
#include "gcalc/diffpoly.hpp"
#include "gcalc/errors.hpp"

namespace gcalc {

// Coefficient algebra A = Q[z_1..z_r] (variables are order-0 DiffVars).
using APoly = DiffPoly;

class FinLieAlgebra {
 public:
  // brackets[i][j] lists (k, c) with [e_i, e_j] = sum c e_k, for i < j.
  // Antisymmetry is filled in; the Jacobi identity is checked exactly.
  FinLieAlgebra(int dim, std::vector<std::string> names,
                std::map<std::pair<int, int>, std::vector<std::pair<int, Rat>>>
                    brackets);

  int dim() const { return dim_; }
  const std::string& name(int i) const { return names_[i]; }
  // [e_i, e_j] as a list of (k, coefficient); empty when i == j.
  std::vector<std::pair<int, Rat>> bracket(int i, int j) const;

  static FinLieAlgebra r2();       // [e1, e2] = e2
  static FinLieAlgebra sl2();      // h, e, f with [h,e]=2e, [h,f]=-2f, [e,f]=h
  static FinLieAlgebra abelian(int dim);

 private:
  int dim_;
  std::vector<std::string> names_;
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rat>>> table_;
};

class GActionAlgebra {
 public:
  // images[i][j] = rho(e_i)(z_j). Checks [rho(e_i), rho(e_j)] = rho([e_i,e_j])
  // exactly on the generators z.
  GActionAlgebra(const FinLieAlgebra& g, int nvars,
                 std::vector<std::vector<APoly>> images);
  static GActionAlgebra trivial(const FinLieAlgebra& g);

  int nvars() const { return nvars_; }
  bool is_trivial() const;
  APoly act(int i, const APoly& f) const;  // rho(e_i)(f)

 private:
  int nvars_;
  std::vector<std::vector<APoly>> images_;
};

struct LieContext {
  FinLieAlgebra g;
  GActionAlgebra A;
};
using LieCtxPtr = std::shared_ptr<const LieContext>;

LieCtxPtr make_lie_context(FinLieAlgebra g, GActionAlgebra A);

// Degree-h chain: sum of a (x) e_{i_1} ^ .. ^ e_{i_h} on strictly
// increasing index tuples.
class LieChain {
 public:
  LieChain() = default;
  LieChain(LieCtxPtr ctx, int degree) : ctx_(std::move(ctx)), deg_(degree) {}

  // Adds a (possibly unsorted) wedge term, normalizing the sign; repeated
  // indices vanish.
  void add_term(const std::vector<int>& tuple, const APoly& coeff);

  int degree() const { return deg_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, APoly>& terms() const { return terms_; }
  const LieCtxPtr& ctx() const { return ctx_; }

  friend bool operator==(const LieChain& a, const LieChain& b);
  LieChain operator-() const;
  LieChain operator+(const LieChain& o) const;
  std::string str() const;

 private:
  LieCtxPtr ctx_;
  int deg_ = 0;
  std::map<std::vector<int>, APoly> terms_;
};

// Degree-k cochain: values on strictly increasing tuples; evaluation on
// arbitrary tuples extends by the permutation sign.
class LieCochain {
 public:
  LieCochain() = default;
  LieCochain(LieCtxPtr ctx, int degree) : ctx_(std::move(ctx)), deg_(degree) {}

  void set_value(const std::vector<int>& tuple, const APoly& value);
  void add_value(const std::vector<int>& tuple, const APoly& value);
  APoly eval(std::vector<int> tuple) const;

  int degree() const { return deg_; }
  bool is_zero() const { return vals_.empty(); }
  const std::map<std::vector<int>, APoly>& values() const { return vals_; }
  const LieCtxPtr& ctx() const { return ctx_; }

  friend bool operator==(const LieCochain& a, const LieCochain& b);
  LieCochain operator-() const;
  LieCochain operator+(const LieCochain& o) const;
  std::string str() const;

 private:
  LieCtxPtr ctx_;
  int deg_ = 0;
  std::map<std::vector<int>, APoly> vals_;
};

// Chevalley-Eilenberg differential.
LieCochain cochain_d(const LieCochain& om);

// (iota_{a(x)X} om)(Y) = (-1)^{h(h-1)/2} a om(X ^ Y); zero when h exceeds
// the cochain degree.
LieCochain contract(const LieChain& x, const LieCochain& om);

// Lie derivative by the explicit formula (degree k - h + 1); agrees with
// the Cartan combination of contract and cochain_d.
LieCochain lie_derive(const LieChain& x, const LieCochain& om);

LieChain chain_wedge(const LieChain& x, const LieChain& y);
// Schouten bracket, degree h1 + h2 - 1.
LieChain chain_bracket(const LieChain& x, const LieChain& y);

// Wires the four operations into the generic machinery.
Calculus<LieChain, LieCochain> build_lie_calculus(const LieCtxPtr& ctx);

// All strictly increasing k-tuples in [0, n).
std::vector<std::vector<int>> increasing_tuples(int n, int k);

// Deterministic sample sets for the axiom sweeps: all basis wedges up to
// max_degree with A-monomial coefficients of degree <= acoeff_deg.
std::vector<LieChain> basis_chains(const LieCtxPtr& ctx, int max_degree,
                                   int acoeff_deg);
std::vector<LieCochain> basis_cochains(const LieCtxPtr& ctx, int max_degree,
                                       int acoeff_deg);

}  // namespace gcalc
