// Lie conformal algebras presented by free F[del]-generators and a
// lambda-bracket table, with sesquilinear extension, axiom checking,
// j-th products, the annihilation-algebra bracket, and module axioms
// for a lambda-action on a differential polynomial algebra.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gcalc/diffpoly.hpp"
#include "gcalc/errors.hpp"
#include "gcalc/report.hpp"
#include "gcalc/unipoly.hpp"

namespace gcalc {

// One term c * lambda^p * del^q * a_k of a bracket table entry.
struct LCATerm {
  Rat c;
  int p = 0;
  int q = 0;
  int k = 0;
};

class LCAPresentation {
 public:
  // table[(i,j)] lists the terms of [a_i lambda a_j]; missing entries are
  // zero. Only free presentations are accepted: any torsion relation is
  // rejected at construction.
  LCAPresentation(std::vector<std::string> generators,
                  std::map<std::pair<int, int>, std::vector<LCATerm>> table,
                  std::vector<std::string> torsion_relations = {});

  int rank() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<LCATerm>& bracket(int i, int j) const;
  bool zero_bracket() const;
  int max_lambda_plus_del_degree() const;  // max p + q over the table

  static LCAPresentation zero(int rank);       // free, zero bracket
  static LCAPresentation virasoro_nocenter();  // [L la L] = (del + 2 la) L
  static LCAPresentation current_sl2();        // [a la b] = [a, b]

 private:
  std::vector<std::string> names_;
  std::map<std::pair<int, int>, std::vector<LCATerm>> table_;
  static const std::vector<LCATerm> kEmpty;
};

// Element sum_k P_k(del) a_k.
class LCAElement {
 public:
  LCAElement() = default;
  static LCAElement generator(int k) {
    LCAElement e;
    e.comps_[k] = UniPoly(Rat(1));
    return e;
  }
  void add(int k, const UniPoly& p);
  const std::map<int, UniPoly>& comps() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  friend LCAElement operator+(const LCAElement& a, const LCAElement& b);
  LCAElement operator-() const;
  friend LCAElement operator*(const UniPoly& p, const LCAElement& a);
  friend bool operator==(const LCAElement&, const LCAElement&) = default;
  std::string str(const LCAPresentation& r) const;

 private:
  std::map<int, UniPoly> comps_;
};

// Polynomials in lambda (resp. lambda and mu) with LCAElement coefficients.
using LambdaLCA = std::map<int, LCAElement>;
using LambdaMuLCA = std::map<std::pair<int, int>, LCAElement>;

// Sesquilinear extension of the bracket table to arbitrary elements:
// [del a la b] = -la [a la b], [a la del b] = (del + la)[a la b].
LambdaLCA lambda_bracket(const LCAPresentation& r, const LCAElement& x,
                         const LCAElement& y);

// j-th product: a_(j) b = j! * (coefficient of lambda^j in [a la b]).
LCAElement jth_product(const LCAPresentation& r, const LCAElement& a,
                       const LCAElement& b, int j);

// Annihilation bracket [a_m, b_n] = sum_j C(m,j) (a_(j) b)_{m+n-j},
// normalized with (del c)_s = -s c_{s-1}. Keys are (generator, index).
std::map<std::pair<int, int>, Rat> ann_bracket(const LCAPresentation& r,
                                               int a, int m, int b, int n);

// Skewcommutativity and Jacobi identity on all generator pairs/triples,
// exactly, as polynomial identities (sesquilinearity makes this complete).
Report check_lca_axioms(const LCAPresentation& r);

// lambda-action of R on an algebra of differential polynomials: the action
// of a_i is a_i la f = sum_s la^s D_s^{(i)}(f) by derivations D_s.
class ModuleSpec {
 public:
  enum class Kind { Zero, FreeStandard, Custom };

  static ModuleSpec zero_action();
  // u_i la f = sum_n la^n df/du_i^(n); requires rank == number of u's used.
  static ModuleSpec free_standard();
  // images[i][s] = D_s^{(i)}(u_j) for j = 0..l-1, finitely many s; extended
  // to u_j^(n) by D_s del = del D_s + D_{s-1} and to products as derivations.
  static ModuleSpec custom(
      std::vector<std::map<int, std::vector<DiffPoly>>> images);

  Kind kind() const { return kind_; }
  bool is_zero_action() const { return kind_ == Kind::Zero; }
  // D_s^{(gen)}(f); exact.
  DiffPoly act(int gen, int s, const DiffPoly& f) const;
  // Upper bound on s with D_s(f) possibly nonzero (-1 when the action is 0).
  int action_degree_bound(const DiffPoly& f) const;

 private:
  Kind kind_ = Kind::Zero;
  std::vector<std::map<int, std::vector<DiffPoly>>> images_;
  DiffPoly act_var(int gen, int s, int j, int n) const;
};

// Conditions (i) and (ii) of the module definition on sampled elements, as
// exact identities in (lambda, mu).
Report check_module_axioms(const LCAPresentation& r, const ModuleSpec& spec,
                           const std::vector<DiffPoly>& samples);

}  // namespace gcalc
