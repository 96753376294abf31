// Variational calculus over a differential polynomial algebra V:
// the de Rham complex with contraction and Lie derivative, polyvector
// fields with the Schouten bracket, evolutionary fields, skewsymmetric
// local operators, the identification maps Phi/Psi with the conformal
// complex over R = (+) F[del] u_i with zero bracket, and Poisson
// verification for matrix differential operators.
#pragma once

#include <optional>
#include <vector>

#include "gcalc/conformal.hpp"
#include "gcalc/diffpoly.hpp"

namespace gcalc {

// Strictly increasing list of wedge factors (du's or d/du's), ordered by
// (generator, derivative order).
using WedgeKey = std::vector<DiffVar>;

// Shared sparse container for forms, polyvector fields and local operators:
// canonical map from a strictly increasing factor list to a coefficient.
// Unsorted insertions are sign-normalized; repeated factors vanish.
class WedgeMap {
 public:
  WedgeMap() = default;
  explicit WedgeMap(int degree) : deg_(degree) {}

  void add(const WedgeKey& factors, const DiffPoly& coeff);
  // Value of the full skewsymmetric tensor on an arbitrary tuple.
  DiffPoly skew_value(const WedgeKey& factors) const;

  int degree() const { return deg_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<WedgeKey, DiffPoly>& terms() const { return terms_; }
  int max_order() const;  // largest derivative order among the factor lists

  WedgeMap operator+(const WedgeMap& o) const;
  WedgeMap operator-() const;
  WedgeMap scaled(const Rat& c) const;
  friend bool operator==(const WedgeMap& a, const WedgeMap& b);
  std::string str(const char* factor_prefix) const;

 private:
  int deg_ = 0;
  std::map<WedgeKey, DiffPoly> terms_;
};

// Differential form sum f du_{i1}^{(m1)} ^ ... ^ du_{ik}^{(mk)}.
struct DeRhamForm {
  WedgeMap w;
  DeRhamForm() = default;
  explicit DeRhamForm(int degree) : w(degree) {}
  int degree() const { return w.degree(); }
  bool is_zero() const { return w.is_zero(); }
  DeRhamForm operator+(const DeRhamForm& o) const { return {w + o.w}; }
  DeRhamForm operator-() const { return {-w}; }
  friend bool operator==(const DeRhamForm&, const DeRhamForm&) = default;
  std::string str() const { return w.str("d.u"); }
  DeRhamForm(WedgeMap m) : w(std::move(m)) {}
};

// Polyvector field sum P d/du_{i1}^{(m1)} ^ ... ^ d/du_{ik}^{(mk)}.
struct PolyVectorField {
  WedgeMap w;
  PolyVectorField() = default;
  explicit PolyVectorField(int degree) : w(degree) {}
  int degree() const { return w.degree(); }
  bool is_zero() const { return w.is_zero(); }
  PolyVectorField operator+(const PolyVectorField& o) const {
    return {w + o.w};
  }
  PolyVectorField operator-() const { return {-w}; }
  friend bool operator==(const PolyVectorField&,
                         const PolyVectorField&) = default;
  std::string str() const { return w.str("d/du"); }
  PolyVectorField(WedgeMap m) : w(std::move(m)) {}
};

// Evolutionary vector field by its characteristics P in V^l:
// X_P = sum (del^n P_i) d/du_i^(n).
struct EvVectorField {
  std::vector<DiffPoly> chars;
};

// Skewsymmetric local k-operator: Omega_k -> V/del(V).
struct LocalOperator {
  WedgeMap w;
  LocalOperator() = default;
  explicit LocalOperator(int degree) : w(degree) {}
  int degree() const { return w.degree(); }
  std::string str() const { return w.str("slot"); }
  LocalOperator(WedgeMap m) : w(std::move(m)) {}
};

// l x l matrix differential operator; entry (i,j) = sum_n h_n del^n.
struct DiffOperatorMatrix {
  int l = 1;
  // entries[i][j] maps del-power -> coefficient polynomial
  std::vector<std::vector<std::map<int, DiffPoly>>> entries;
  static DiffOperatorMatrix make(int l);
};

// --- de Rham complex -------------------------------------------------------

DeRhamForm deRham_d(const DeRhamForm& om);
// Action of del on forms (even derivation, del(du^(n)) = du^(n+1)).
DeRhamForm form_del(const DeRhamForm& om);

DeRhamForm form_contract(const PolyVectorField& x, const DeRhamForm& om);
DeRhamForm form_contract(const EvVectorField& x, const DeRhamForm& om);
// Lie derivative via Cartan's formula.
DeRhamForm form_lie_derive(const PolyVectorField& x, const DeRhamForm& om);

// --- polyvector fields -----------------------------------------------------

PolyVectorField polyvector_wedge(const PolyVectorField& x,
                                 const PolyVectorField& y);
PolyVectorField polyvector_schouten(const PolyVectorField& x,
                                    const PolyVectorField& y);
// del acting on polyvector fields; X is evolutionary iff del(X) = 0 (for
// finite-support X this forces X = 0, see is_evolutionary).
PolyVectorField polyvector_del(const PolyVectorField& x);
bool is_evolutionary(const PolyVectorField& x);
// The del-constraint checked only on coefficients of order < order_bound,
// the truncation-consistent sense for Phi images.
bool is_evolutionary_truncated(const PolyVectorField& x, int order_bound);

// Truncation of the evolutionary field X_P to orders <= max_ord.
PolyVectorField ev_to_polyvector(const EvVectorField& x, int max_ord);

// --- the Phi / Psi dictionary ----------------------------------------------

// Divided-power conversion: coefficients n_1! ... n_k! c_n assembled on
// wedge monomials; requires the chain's trust order >= max_ord.
PolyVectorField phi_map(const TruncatedChain& a, int max_ord);
// Skewsymmetrization tensor of a form as a conformal cochain.
ConformalCochain psi_map(const DeRhamForm& om);

// Quotient-aware equality of forms (via the Psi image; kernel = del forms).
bool form_quotient_equal(const DeRhamForm& a, const DeRhamForm& b);

// --- local operators -------------------------------------------------------

// S(X) as a representative of a class in V/del(V).
DiffPoly eval_local(const LocalOperator& s, const PolyVectorField& x);
DiffPoly eval_local(const LocalOperator& s,
                    const std::vector<EvVectorField>& wedge);

LocalOperator local_op_d(const LocalOperator& s);
LocalOperator local_op_contract(const PolyVectorField& x,
                                const LocalOperator& s);
LocalOperator local_op_contract(const TruncatedChain& x,
                                const LocalOperator& s);
LocalOperator local_op_lie_derive(const PolyVectorField& x,
                                  const LocalOperator& s);
bool local_op_equal(const LocalOperator& a, const LocalOperator& b);
LocalOperator form_to_local(const DeRhamForm& om);
ConformalCochain local_to_cochain(const LocalOperator& s);

// --- Poisson verification ---------------------------------------------------

// Adjoint (H*)_{ij} = sum_n (-del)^n o h_{ji;n}; throws SkewAdjointViolation
// naming the offending entry when H* != -H.
void check_skew_adjoint(const DiffOperatorMatrix& h);

// The bivector of a skew-adjoint operator, via the gauge
// psi_{ij}(y) = 1/2 sum_n h_{ji;n} y^n.
struct BivectorResult {
  TruncatedChain chain;
  std::vector<ChainGauge> gauges;
};
BivectorResult bivector_from_operator(const DiffOperatorMatrix& h, int trust);

struct PoissonVerdict {
  bool poisson = false;
  int obstruction_trust = 0;
  TruncatedChain obstruction;      // [X_H, X_H], degree 3
  std::string first_nonzero;       // entry description when not Poisson
};
// order: verification depth; must be at least (max del-power) +
// (max coefficient order) + 2. The bivector is expanded far enough that the
// obstruction is exact to `order` at least.
PoissonVerdict check_poisson(const DiffOperatorMatrix& h, int order = 8);

// Mixed obstruction [X_H1, X_H2]; the pair is compatible iff it vanishes.
PoissonVerdict check_compatible(const DiffOperatorMatrix& h1,
                                const DiffOperatorMatrix& h2, int order = 8);

// Smallest admissible verification order for check_poisson.
int poisson_min_order(const DiffOperatorMatrix& h);

// The conformal context used by the dictionary: zero-bracket R of rank l
// with the standard free action on V.
ConformalCtxPtr variational_context(int l);

// Probe family for the non-degeneracy test: evolutionary wedges with
// monomial characteristics of V-degree <= 2 and order <= ord(S) + 1.
// Returns a witness X with S(X) != 0 in V/del(V), or nullopt if the probe
// family is exhausted (semi-decision).
std::optional<std::vector<EvVectorField>> nondegeneracy_witness(
    const LocalOperator& s, int num_gens);

}  // namespace gcalc
