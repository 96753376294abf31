// Test-only oracle for Poisson verification, independent of the chain
// machinery: the lambda-bracket {u_i la u_j} = H_{ji}(la) extends to all
// differential polynomials by the master formula
//   {u_i la g} = sum_{j,n} dg/du_j^(n) (la + del)^n {u_i la u_j},
// and H is Hamiltonian iff the PVA Jacobi identity
//   {u_i la {u_j mu u_k}} - {u_j mu {u_i la u_k}} = {{u_i la u_j}_{la+mu} u_k}
// holds for all generator triples, as an exact polynomial identity in
// (la, mu) with coefficients in V.
#pragma once

#include <map>
#include <utility>

#include "gcalc/varcalc.hpp"

namespace gcalc::testing {

using OneVar = std::map<int, DiffPoly>;                      // la^p -> V
using TwoVar = std::map<std::pair<int, int>, DiffPoly>;      // la^a mu^b -> V

inline void add1(OneVar& m, int p, const DiffPoly& c) {
  if (c.is_zero()) return;
  auto [it, ins] = m.emplace(p, c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

inline void add2(TwoVar& m, int a, int b, const DiffPoly& c) {
  if (c.is_zero()) return;
  auto [it, ins] = m.emplace(std::make_pair(a, b), c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

// (la + del) acting on a one-variable polynomial with V coefficients.
inline OneVar shift1(const OneVar& f) {
  OneVar r;
  for (const auto& [p, c] : f) {
    add1(r, p + 1, c);
    add1(r, p, total_derivative(c));
  }
  return r;
}

// (la + mu + del) and -(la + mu + del) on two-variable polynomials.
inline TwoVar shift2(const TwoVar& f, int sign) {
  TwoVar r;
  for (const auto& [ab, c] : f) {
    add2(r, ab.first + 1, ab.second, Rat(sign) * c);
    add2(r, ab.first, ab.second + 1, Rat(sign) * c);
    add2(r, ab.first, ab.second, Rat(sign) * total_derivative(c));
  }
  return r;
}

inline OneVar bracket_gen(const DiffOperatorMatrix& h, int i, int j) {
  OneVar r;
  for (const auto& [n, c] : h.entries[j][i]) add1(r, n, c);
  return r;
}

// {u_i la g} by the master formula.
inline OneVar bracket_left_gen(const DiffOperatorMatrix& h, int i,
                               const DiffPoly& g) {
  OneVar out;
  for (int j = 0; j < h.l; ++j) {
    OneVar b = bracket_gen(h, i, j);
    for (int n = 0; n <= g.max_order(); ++n) {
      DiffPoly dg = partial_derivative(g, j, n);
      if (n > 0) b = shift1(b);
      if (dg.is_zero()) continue;
      for (const auto& [p, c] : b) add1(out, p, dg * c);
    }
  }
  return out;
}

// {f_{la+mu} u_k} for f in V (no lambda dependence), two-variable output:
//   sum_{i,m} {u_i nu+del u_k}_-> (-nu - del)^m (df/du_i^(m)),  nu = la+mu.
inline TwoVar bracket_right_elem(const DiffOperatorMatrix& h,
                                 const DiffPoly& f, int k) {
  TwoVar out;
  for (int i = 0; i < h.l; ++i) {
    for (int m = 0; m <= f.max_order(); ++m) {
      DiffPoly df = partial_derivative(f, i, m);
      if (df.is_zero()) continue;
      TwoVar cur{{{0, 0}, df}};
      for (int t = 0; t < m; ++t) cur = shift2(cur, -1);
      // apply sum_q b_q (la + mu + del)^q to cur, collecting la/mu powers
      OneVar b = bracket_gen(h, i, k);
      std::map<int, TwoVar> powers;  // (la+mu+del)^q applied to cur
      int qmax = 0;
      for (const auto& [q, c] : b) qmax = std::max(qmax, q);
      powers[0] = cur;
      for (int q = 1; q <= qmax; ++q) powers[q] = shift2(powers[q - 1], 1);
      for (const auto& [q, c] : b)
        for (const auto& [ab, v] : powers[q])
          add2(out, ab.first, ab.second, c * v);
    }
  }
  return out;
}

// The Jacobiator on (u_i, u_j, u_k); empty when the identity holds.
inline TwoVar pva_jacobiator(const DiffOperatorMatrix& h, int i, int j,
                             int k) {
  TwoVar jac;
  // {u_i la {u_j mu u_k}}
  for (const auto& [b, c] : bracket_gen(h, j, k))
    for (const auto& [a, v] : bracket_left_gen(h, i, c)) add2(jac, a, b, v);
  // - {u_j mu {u_i la u_k}}
  for (const auto& [a, c] : bracket_gen(h, i, k))
    for (const auto& [b, v] : bracket_left_gen(h, j, c))
      add2(jac, a, b, -v);
  // - {{u_i la u_j}_{la+mu} u_k}
  for (const auto& [a, c] : bracket_gen(h, i, j))
    for (const auto& [ab, v] : bracket_right_elem(h, c, k))
      add2(jac, a + ab.first, ab.second, -v);
  return jac;
}

// Master-equation verdict: Jacobi identity on all generator triples.
inline bool pva_poisson(const DiffOperatorMatrix& h) {
  for (int i = 0; i < h.l; ++i)
    for (int j = 0; j < h.l; ++j)
      for (int k = 0; k < h.l; ++k)
        if (!pva_jacobiator(h, i, j, k).empty()) return false;
  return true;
}

// Compatibility: both Poisson and the sum Poisson.
inline bool pva_compatible(const DiffOperatorMatrix& h1,
                           const DiffOperatorMatrix& h2) {
  DiffOperatorMatrix sum = DiffOperatorMatrix::make(h1.l);
  for (int i = 0; i < h1.l; ++i)
    for (int j = 0; j < h1.l; ++j) {
      for (const auto& [n, c] : h1.entries[i][j]) {
        auto [it, ins] = sum.entries[i][j].emplace(n, c);
        if (!ins) it->second += c;
      }
      for (const auto& [n, c] : h2.entries[i][j]) {
        auto [it, ins] = sum.entries[i][j].emplace(n, c);
        if (!ins) it->second += c;
      }
    }
  return pva_poisson(h1) && pva_poisson(h2) && pva_poisson(sum);
}

}  // namespace gcalc::testing
