// Chain and cochain calculus for a Lie conformal algebra R acting on a
// differential polynomial algebra V.
//
// A k-cochain is a finite skewsymmetric tensor
//   (generator tuple, lambda multi-index) -> V,
// with equality decided modulo (del + la_1 + ... + la_k) by eliminating the
// last lambda. A k-chain is an R-tensor against a formal series
// phi(x_1..x_k) satisfying (d/dx_1 + ... + d/dx_k) phi = del phi; chains are
// stored as coefficient tensors exact up to a trust order, produced from a
// finite gauge representation phi = e^{x_k del} psi(x_1 - x_k, ...).
// Operations propagate trust orders soundly and raise InsufficientOrder
// rather than silently truncating.
#pragma once

#include <climits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gcalc/calculus.hpp"
#include "gcalc/diffpoly.hpp"
#include "gcalc/errors.hpp"
#include "gcalc/lca.hpp"

namespace gcalc {

// Truncated formal series in x_1..x_nvars with V coefficients; also used as
// the lambda-exponent tensor of a cochain part.
struct XSeries {
  int nvars = 0;
  std::map<std::vector<int>, DiffPoly> coeffs;

  explicit XSeries(int n = 0) : nvars(n) {}

  void add(const std::vector<int>& exps, const DiffPoly& c);
  bool is_zero() const { return coeffs.empty(); }
  int max_total_degree() const;

  // Product on disjoint variable sets (exponent concatenation); terms of
  // total degree above max_deg are dropped.
  static XSeries combine(const XSeries& a, const XSeries& b,
                         int max_deg = INT_MAX);
  // Move variable i of *this to variable target[i] of a series in new_nvars
  // variables; two sources may map to the same target (substitution x_b = x_a).
  XSeries remap(int new_nvars, const std::vector<int>& target) const;
  // d/dx_v applied `times` times.
  XSeries deriv(int v, int times) const;
  // Coefficient of x_v^s as a series in the remaining variables.
  XSeries extract(int v, int s) const;
  XSeries map_coeffs(const std::function<DiffPoly(const DiffPoly&)>& f) const;
  XSeries truncated(int max_deg) const;
  XSeries scaled(const Rat& c) const;

  friend bool operator==(const XSeries&, const XSeries&) = default;
};

// (generator tuple) -> exponent tensor; stored fully skewsymmetrized under
// simultaneous permutation of (generator, exponent) slots.
using GenTensor = std::map<std::vector<int>, XSeries>;

GenTensor skew_canonicalize(
    int arity, const std::vector<std::pair<std::vector<int>, XSeries>>& raw);

struct ConformalContext {
  LCAPresentation R;
  ModuleSpec spec;
};
using ConformalCtxPtr = std::shared_ptr<const ConformalContext>;

ConformalCtxPtr make_conformal_context(LCAPresentation r, ModuleSpec spec);

class ConformalCochain {
 public:
  ConformalCochain() = default;
  explicit ConformalCochain(int degree) : deg_(degree) {}
  static ConformalCochain from_raw(
      int degree, std::vector<std::pair<std::vector<int>, XSeries>> raw);
  // 0-cochain from a representative of its class in V/del(V).
  static ConformalCochain scalar(const DiffPoly& v);

  int degree() const { return deg_; }
  const GenTensor& parts() const { return t_; }
  bool raw_zero() const;
  int max_lambda_degree() const;

  ConformalCochain operator+(const ConformalCochain& o) const;
  ConformalCochain operator-() const;
  ConformalCochain scaled(const Rat& c) const;
  std::string str() const;

 private:
  int deg_ = 0;
  GenTensor t_;
};

// The basic (tilde) complex shares the tensor representation; only equality
// differs (plain coefficientwise instead of the quotient decision).
using BasicCochain = ConformalCochain;

class TruncatedChain {
 public:
  TruncatedChain() = default;
  TruncatedChain(int degree, int trust) : deg_(degree), trust_(trust) {}
  static TruncatedChain from_raw(
      int degree, int trust,
      std::vector<std::pair<std::vector<int>, XSeries>> raw);
  // Degree-0 chain: an element of V^del (a constant for V = R_l).
  static TruncatedChain constant(const Rat& c, int trust);

  int degree() const { return deg_; }
  int trust() const { return trust_; }
  const GenTensor& parts() const { return t_; }
  bool zero_within_trust() const;
  // Checks the coefficient form of the defining constraint
  // sum_j (m_j + 1) c_{m + e_j} = del(c_m) for |m| < trust.
  bool satisfies_del_constraint() const;

  TruncatedChain operator+(const TruncatedChain& o) const;
  TruncatedChain operator-() const;
  TruncatedChain scaled(const Rat& c) const;
  std::string str() const;

 private:
  int deg_ = 0;
  int trust_ = 0;
  GenTensor t_;
};

// Finite generating representation of a chain:
// phi(x_1..x_k) = e^{x_k del} psi(x_1 - x_k, ..., x_{k-1} - x_k).
struct ChainGauge {
  std::vector<int> gens;                       // k generator indices
  std::map<std::vector<int>, DiffPoly> psi;    // (k-1)-variable polynomial
};

TruncatedChain chain_expand(const ChainGauge& g, int trust);

TruncatedChain chain_wedge(const TruncatedChain& x, const TruncatedChain& y);

// Largest sound output trust order for the bracket (may be negative).
int bracket_output_trust(const TruncatedChain& x, const TruncatedChain& y,
                         const ConformalContext& ctx);
TruncatedChain chain_bracket(const TruncatedChain& x, const TruncatedChain& y,
                             const ConformalContext& ctx);

ConformalCochain cochain_d(const ConformalCochain& c,
                           const ConformalContext& ctx);

// Equality modulo (del + la_1 + ... + la_k): eliminate la_k and compare
// coefficientwise; for 0-cochains this is equality in V/del(V).
bool cochain_equal(const ConformalCochain& a, const ConformalCochain& b);
bool cochain_is_zero(const ConformalCochain& a);
// Plain coefficientwise equality (the basic complex).
bool basic_equal(const BasicCochain& a, const BasicCochain& b);

// Poly-lambda-bracket coordinates: la_k eliminated via
// la_k -> -la_1 - ... - la_{k-1} - del.
struct PolyLambdaCochain {
  int degree = 0;
  std::map<std::pair<std::vector<int>, std::vector<int>>, DiffPoly> entries;
  friend bool operator==(const PolyLambdaCochain&,
                         const PolyLambdaCochain&) = default;
};
PolyLambdaCochain to_poly_lambda(const ConformalCochain& c);
ConformalCochain from_poly_lambda(const PolyLambdaCochain& p);

ConformalCochain contract(const TruncatedChain& x, const ConformalCochain& c);
ConformalCochain lie_derive(const TruncatedChain& x, const ConformalCochain& c,
                            const ConformalContext& ctx);

// Chain differential dual to the cochain one; defined only for the zero
// lambda-bracket (where it vanishes identically), the nontrivial case has a
// divergent extra term.
TruncatedChain chain_d_zero_bracket(const TruncatedChain& x,
                                    const ConformalContext& ctx);

// Coefficientwise equality inside the common trust region.
bool chain_equal_trust(const TruncatedChain& a, const TruncatedChain& b);

Calculus<TruncatedChain, ConformalCochain> build_conformal_calculus(
    const ConformalCtxPtr& ctx);

// Deterministic-seeded samples. Cochains have lambda-order <= lorder and
// random differential-polynomial values; chains come from random gauges.
std::vector<ConformalCochain> sample_cochains(const ConformalContext& ctx,
                                              int count, int max_degree,
                                              int lorder, int vgens,
                                              unsigned seed);
std::vector<TruncatedChain> sample_chains(const ConformalContext& ctx,
                                          int count, int max_degree, int trust,
                                          int vgens, unsigned seed);

}  // namespace gcalc
