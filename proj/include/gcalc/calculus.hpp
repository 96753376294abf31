// Setting-independent Gerstenhaber / calculus machinery.
//
// A calculus structure is a Gerstenhaber algebra G acting on a complex
// (Omega, d) by contraction iota and Lie derivative L, with Cartan's
// formula L_X = [iota_X, d]. The three concrete settings (Lie algebra
// chains, Lie conformal algebra chains, variational calculus) plug their
// operations into Calculus<G, Om> and share the axiom checkers below.
//
// Sign conventions (generators are even, so every super-sign reduces to
// homological degree): operator parity of iota_X is deg X, of L_X is
// deg X + 1, of d is 1; super-commutator [A,B] = AB - (-1)^{p(A)p(B)} BA.
#pragma once

#include <array>
#include <climits>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "gcalc/errors.hpp"
#include "gcalc/par.hpp"
#include "gcalc/rat.hpp"
#include "gcalc/report.hpp"

namespace gcalc {

template <class T>
using Op = std::function<T(const T&)>;

// Linear-space operations a setting provides for its graded objects.
// eq is the setting's decision procedure (quotient- or trust-aware).
template <class T>
struct VecOps {
  std::function<T(const T&, const T&)> add;
  std::function<T(const T&)> neg;
  std::function<T(const Rat&, const T&)> scale;
  std::function<bool(const T&, const T&)> eq;
  std::function<bool(const T&)> is_zero;
  std::function<int(const T&)> degree;
  std::function<std::string(const T&)> show;

  T sub(const T& a, const T& b) const { return add(a, neg(b)); }
  T sgn_scale(int parity, const T& a) const {
    return (parity & 1) ? neg(a) : a;
  }
};

template <class G, class Om>
struct Calculus {
  VecOps<G> gv;
  VecOps<Om> ov;
  std::function<G(const G&, const G&)> wedge;
  std::function<G(const G&, const G&)> bracket;
  Op<Om> d;
  std::function<Om(const G&, const Om&)> contract;
  std::function<Om(const G&, const Om&)> lie;
};

// iota_{X_1 ^ ... ^ X_m} = iota_{X_1} o ... o iota_{X_m}; the empty wedge
// (unit of G) contracts as the identity.
template <class Om>
Op<Om> extend_contraction(std::vector<Op<Om>> factors) {
  return [factors = std::move(factors)](const Om& om) {
    Om cur = om;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it)
      cur = (*it)(cur);
    return cur;
  };
}

// Cartan's formula: L_X = iota_X o d - (-1)^{deg X} d o iota_X.
template <class Om>
Op<Om> cartan_lie_derivative(Op<Om> iota_x, Op<Om> d, int deg_x,
                             VecOps<Om> ov) {
  return [=](const Om& om) {
    Om a = iota_x(d(om));
    Om b = d(iota_x(om));
    return ov.sub(a, ov.sgn_scale(deg_x, b));
  };
}

// Closed form of the Lie derivative by X_1 ^ ... ^ X_m from generator-level
// data (iota_i, L_i) and the generator brackets, for any epsilon:
//
//   L_X = sum_i (-1)^{m+i} iota_1 .. L_i .. iota_m
//         - eps sum_{i<j} (-1)^{m+j+1} iota_1 .. iota_{[X_i,X_j]}(at i) ..
//           (j omitted) .. iota_m .
//
// The pair-term sign is the even-generator value of the paper-level super
// sign (general form: the sum of the parities above position i, plus m+i,
// plus (p(X_j)+1)(parities strictly between i and j + i+j+1); with all
// generator parities zero it collapses to m+j+1 mod 2).
template <class Om>
Op<Om> extend_lie_derivative_epsilon(
    std::vector<Op<Om>> gen_iota, std::vector<Op<Om>> gen_lie,
    std::function<Op<Om>(int, int)> bracket_iota, const Rat& eps,
    VecOps<Om> ov) {
  const int m = static_cast<int>(gen_iota.size());
  return [=](const Om& om) {
    Om acc = ov.scale(Rat(0), om);
    for (int i = 0; i < m; ++i) {
      Om cur = om;
      for (int t = m - 1; t >= 0; --t)
        cur = (t == i) ? gen_lie[t](cur) : gen_iota[t](cur);
      acc = ov.add(acc, ov.sgn_scale(m + i + 1, cur));  // (-1)^{m+(i+1)}
    }
    if (!is_zero(eps)) {
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
          Om cur = om;
          for (int t = m - 1; t >= 0; --t) {
            if (t == j) continue;
            cur = (t == i) ? bracket_iota(i, j)(cur) : gen_iota[t](cur);
          }
          // overall minus from the -eps prefactor, sign (-1)^{m+(j+1)+1}
          acc = ov.add(acc, ov.scale(-eps, ov.sgn_scale(m + j, cur)));
        }
      }
    }
    return acc;
  };
}

namespace detail {

template <class F>
Report parallel_sweep(std::size_t n, F&& unit) {
  std::vector<Report> parts(n);
  par::parallel_for(n, [&](std::size_t i) { parts[i] = unit(i); });
  Report merged;
  for (const auto& p : parts) merged.merge(p);
  return merged;
}

}  // namespace detail

// One Gerstenhaber pair check (wedge super-commutativity, bracket
// super-skewness) and one triple check (associativity, Jacobi, left and
// right Leibniz).
template <class G>
Report gerstenhaber_pair_report(const VecOps<G>& gv,
                                const std::function<G(const G&, const G&)>& wedge,
                                const std::function<G(const G&, const G&)>& bracket,
                                const G& x, const G& y,
                                const std::string& id) {
  Report rep;
  const int px = gv.degree(x), py = gv.degree(y);
  G w1 = wedge(x, y);
  G w2 = gv.sgn_scale(px * py, wedge(y, x));
  rep.record("wedge-supercommutative", id, gv.eq(w1, w2),
             gv.eq(w1, w2) ? "" : gv.show(w1) + " vs " + gv.show(w2));
  G b1 = bracket(x, y);
  G b2 = gv.sgn_scale((px + 1) * (py + 1) + 1, bracket(y, x));
  rep.record("bracket-superskew", id, gv.eq(b1, b2),
             gv.eq(b1, b2) ? "" : gv.show(b1) + " vs " + gv.show(b2));
  return rep;
}

// include_assoc_right also runs wedge-associativity and the right Leibniz
// rule; these build degree 3d wedges, which callers with expensive
// high-degree elements may reserve for small samples.
template <class G>
Report gerstenhaber_triple_report(
    const VecOps<G>& gv, const std::function<G(const G&, const G&)>& wedge,
    const std::function<G(const G&, const G&)>& bracket, const G& x,
    const G& y, const G& z, const std::string& id,
    bool include_assoc_right = true) {
  Report rep;
  const int px = gv.degree(x), py = gv.degree(y), pz = gv.degree(z);

  if (include_assoc_right) {
    G a1 = wedge(wedge(x, y), z);
    G a2 = wedge(x, wedge(y, z));
    rep.record("wedge-associative", id, gv.eq(a1, a2));
  }

  G j1 = bracket(x, bracket(y, z));
  G j2 = gv.sgn_scale((px + 1) * (py + 1), bracket(y, bracket(x, z)));
  G j3 = bracket(bracket(x, y), z);
  rep.record("bracket-jacobi", id, gv.eq(gv.sub(j1, j2), j3));

  G l1 = bracket(x, wedge(y, z));
  G l2 = gv.add(wedge(bracket(x, y), z),
                gv.sgn_scale((px + 1) * py, wedge(y, bracket(x, z))));
  rep.record("left-leibniz", id, gv.eq(l1, l2));

  if (include_assoc_right) {
    G r1 = bracket(wedge(x, y), z);
    G r2 = gv.add(wedge(x, bracket(y, z)),
                  gv.sgn_scale(py * (pz + 1), wedge(bracket(x, z), y)));
    rep.record("right-leibniz", id, gv.eq(r1, r2));
  }
  return rep;
}

// Exhaustive sweep over all pairs and triples from the sample set.
template <class G>
Report check_gerstenhaber_axioms(const VecOps<G>& gv,
                                 std::function<G(const G&, const G&)> wedge,
                                 std::function<G(const G&, const G&)> bracket,
                                 const std::vector<G>& samples) {
  const std::size_t n = samples.size();
  return detail::parallel_sweep(n * n, [&](std::size_t flat) {
    const G& x = samples[flat / n];
    const G& y = samples[flat % n];
    std::string xy =
        "X" + std::to_string(flat / n) + ",Y" + std::to_string(flat % n);
    Report rep = gerstenhaber_pair_report(gv, wedge, bracket, x, y, xy);
    for (std::size_t k = 0; k < n; ++k)
      rep.merge(gerstenhaber_triple_report(gv, wedge, bracket, x, y,
                                           samples[k],
                                           xy + ",Z" + std::to_string(k)));
    return rep;
  });
}

// Budgeted sweep over an explicit list of sample triples.
template <class G>
Report check_gerstenhaber_axioms_on_triples(
    const VecOps<G>& gv, std::function<G(const G&, const G&)> wedge,
    std::function<G(const G&, const G&)> bracket,
    const std::vector<std::array<G, 3>>& triples,
    int assoc_right_degree_budget = INT_MAX) {
  return detail::parallel_sweep(triples.size(), [&](std::size_t i) {
    const auto& [x, y, z] = triples[i];
    std::string id = "t" + std::to_string(i);
    bool full = gv.degree(x) + gv.degree(y) + gv.degree(z) <=
                assoc_right_degree_budget;
    Report rep = gerstenhaber_pair_report(gv, wedge, bracket, x, y, id);
    rep.merge(
        gerstenhaber_triple_report(gv, wedge, bracket, x, y, z, id, full));
    return rep;
  });
}

// Calculus axioms for one pair of chains against one cochain:
//   [iota_X, iota_Y] = 0,  iota_{X^Y} = iota_X iota_Y,
//   Cartan  L_X = [iota_X, d],  [L_X, d] = 0,
//   [L_X, iota_Y] = iota_{[X,Y]},  [L_X, L_Y] = L_{[X,Y]},
// plus the grading constraints on iota, L and d.
template <class G, class Om>
Report calculus_pair_report(const Calculus<G, Om>& c, const G& x, const G& y,
                            const Om& om, const std::string& id) {
    Report rep;
    const int px = c.gv.degree(x), py = c.gv.degree(y);

    Om ixiy = c.contract(x, c.contract(y, om));
    Om iyix = c.contract(y, c.contract(x, om));
    rep.record("iota-commute", id,
               c.ov.eq(ixiy, c.ov.sgn_scale(px * py, iyix)));

    Om iwedge = c.contract(c.wedge(x, y), om);
    rep.record("iota-module", id, c.ov.eq(iwedge, ixiy));

    Om lx = c.lie(x, om);
    Om cartan = c.ov.sub(c.contract(x, c.d(om)),
                         c.ov.sgn_scale(px, c.d(c.contract(x, om))));
    rep.record("cartan", id, c.ov.eq(lx, cartan));

    Om ld = c.lie(x, c.d(om));
    Om dl = c.d(lx);
    rep.record("lie-chainmap", id, c.ov.eq(ld, c.ov.sgn_scale(px + 1, dl)));

    Om li = c.lie(x, c.contract(y, om));
    Om il = c.contract(y, lx);
    Om ibr = c.contract(c.bracket(x, y), om);
    rep.record("lie-iota", id,
               c.ov.eq(c.ov.sub(li, c.ov.sgn_scale((px + 1) * py, il)), ibr));

    Om ll = c.lie(x, c.lie(y, om));
    Om ll2 = c.lie(y, lx);
    Om lbr = c.lie(c.bracket(x, y), om);
    rep.record("lie-homomorphism", id,
               c.ov.eq(c.ov.sub(ll, c.ov.sgn_scale((px + 1) * (py + 1), ll2)),
                       lbr));

    bool grading = true;
    if (!c.ov.is_zero(iwedge) &&
        c.ov.degree(iwedge) != c.ov.degree(om) - px - py)
      grading = false;
    if (!c.ov.is_zero(lx) && c.ov.degree(lx) != c.ov.degree(om) - px + 1)
      grading = false;
    Om dom = c.d(om);
    if (!c.ov.is_zero(dom) && c.ov.degree(dom) != c.ov.degree(om) + 1)
      grading = false;
    rep.record("grading", id, grading);
    return rep;
}

// Exhaustive sweep over all chain pairs against all cochain samples.
template <class G, class Om>
Report check_calculus_axioms(const Calculus<G, Om>& c,
                             const std::vector<G>& gs,
                             const std::vector<Om>& os) {
  const std::size_t ng = gs.size(), no = os.size();
  return detail::parallel_sweep(ng * ng * no, [&](std::size_t flat) {
    const G& x = gs[flat / (ng * no)];
    const G& y = gs[(flat / no) % ng];
    const Om& om = os[flat % no];
    std::string id = "X" + std::to_string(flat / (ng * no)) + ",Y" +
                     std::to_string((flat / no) % ng) + ",w" +
                     std::to_string(flat % no);
    return calculus_pair_report(c, x, y, om, id);
  });
}

// Budgeted sweep over an explicit list of (X, Y, omega) samples.
template <class G, class Om>
Report check_calculus_axioms_on_pairs(
    const Calculus<G, Om>& c,
    const std::vector<std::tuple<G, G, Om>>& samples) {
  return detail::parallel_sweep(samples.size(), [&](std::size_t i) {
    const auto& [x, y, om] = samples[i];
    return calculus_pair_report(c, x, y, om, "p" + std::to_string(i));
  });
}

// The epsilon-right Leibniz rule
//   L_{X^Y} = iota_X L_Y + (-1)^{p(Y)} L_X iota_Y
//             - eps (-1)^{p(Y)} iota_{[X,Y]}
// for a representation (iota, lie) of the Gerstenhaber algebra on V.
template <class G, class V>
Report check_epsilon_leibniz(const VecOps<G>& gv, const VecOps<V>& vv,
                             std::function<G(const G&, const G&)> wedge,
                             std::function<G(const G&, const G&)> bracket,
                             std::function<V(const G&, const V&)> iota,
                             std::function<V(const G&, const V&)> lie,
                             const Rat& eps, const std::vector<G>& gs,
                             const std::vector<V>& vs) {
  const std::size_t ng = gs.size(), nv = vs.size();
  return detail::parallel_sweep(ng * ng * nv, [&](std::size_t flat) {
    Report rep;
    const G& x = gs[flat / (ng * nv)];
    const G& y = gs[(flat / nv) % ng];
    const V& v = vs[flat % nv];
    const int py = gv.degree(y);
    std::string id = "X" + std::to_string(flat / (ng * nv)) + ",Y" +
                     std::to_string((flat / nv) % ng) + ",v" +
                     std::to_string(flat % nv);
    V lhs = lie(wedge(x, y), v);
    V rhs = vv.add(iota(x, lie(y, v)), vv.sgn_scale(py, lie(x, iota(y, v))));
    rhs = vv.add(rhs, vv.scale(-eps, vv.sgn_scale(py, iota(bracket(x, y), v))));
    rep.record("epsilon-right-leibniz", id, vv.eq(lhs, rhs));
    return rep;
  });
}

// Morphism of calculus structures (Phi : G' -> G, Psi : Om -> Om'):
// Phi a Gerstenhaber homomorphism, Psi a chain map, and
// iota_{X'} Psi(om) = Psi(iota_{Phi(X')} om).
template <class G1, class Om1, class G2, class Om2>
Report check_morphism(std::function<G1(const G2&)> phi,
                      std::function<Om2(const Om1&)> psi,
                      const Calculus<G1, Om1>& src,
                      const Calculus<G2, Om2>& dst,
                      const std::vector<G2>& gsamples,
                      const std::vector<Om1>& osamples) {
  Report rep;
  for (std::size_t i = 0; i < gsamples.size(); ++i) {
    for (std::size_t j = 0; j < gsamples.size(); ++j) {
      const G2 &x = gsamples[i], &y = gsamples[j];
      std::string id = "X" + std::to_string(i) + ",Y" + std::to_string(j);
      rep.record("phi-wedge", id,
                 src.gv.eq(phi(dst.wedge(x, y)), src.wedge(phi(x), phi(y))));
      rep.record("phi-bracket", id,
                 src.gv.eq(phi(dst.bracket(x, y)),
                           src.bracket(phi(x), phi(y))));
    }
  }
  for (std::size_t i = 0; i < osamples.size(); ++i) {
    const Om1& om = osamples[i];
    std::string id = "w" + std::to_string(i);
    rep.record("psi-chainmap", id,
               dst.ov.eq(psi(src.d(om)), dst.d(psi(om))));
    for (std::size_t j = 0; j < gsamples.size(); ++j) {
      const G2& x = gsamples[j];
      std::string id2 = id + ",X" + std::to_string(j);
      rep.record("iota-compatible", id2,
                 dst.ov.eq(dst.contract(x, psi(om)),
                           psi(src.contract(phi(x), om))));
    }
  }
  return rep;
}

// Membership in the reduced Gerstenhaber algebra G^del:
// [iota_X, del] = 0 tested on the given cochain samples (del is even).
template <class G, class Om>
bool in_reduced_algebra(const Calculus<G, Om>& c, const Op<Om>& del,
                        const G& x, const std::vector<Om>& osamples) {
  for (const Om& om : osamples) {
    Om a = c.contract(x, del(om));
    Om b = del(c.contract(x, om));
    if (!c.ov.is_zero(c.ov.sub(a, b))) return false;
  }
  return true;
}

// Reduced calculus structure: same operations, cochain equality replaced by
// the quotient decision procedure for Om/del(Om). Verifies [d, del] = 0 on
// the provided samples first.
template <class G, class Om>
Calculus<G, Om> reduced_calculus(
    Calculus<G, Om> c, const Op<Om>& del,
    std::function<bool(const Om&, const Om&)> quotient_eq,
    std::function<bool(const Om&)> quotient_zero,
    const std::vector<Om>& chainmap_samples) {
  for (std::size_t i = 0; i < chainmap_samples.size(); ++i) {
    const Om& om = chainmap_samples[i];
    Om a = c.d(del(om));
    Om b = del(c.d(om));
    if (!c.ov.is_zero(c.ov.sub(a, b)))
      throw NotChainMap("sample " + std::to_string(i));
  }
  c.ov.eq = std::move(quotient_eq);
  c.ov.is_zero = std::move(quotient_zero);
  return c;
}

}  // namespace gcalc
