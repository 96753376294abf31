// Schouten bracket on S_A(Pi g) for a Lie algebroid (g, A), built from the
// generator-level bracket by the Leibniz rules. Explicit expansion for
// even generators:
//
//   [f, X_1 ^ .. ^ X_m]       = sum_i (-1)^i X_i(f) X_1 ^ .i. ^ X_m
//   [X, f]                    = (-1)^m [f, X]
//   [X_1^..^X_m, Y_1^..^Y_n]  = sum_{i,j} (-1)^{i+j} [X_i,Y_j] ^ X .i. ^ Y .j.
//
// (1-based i, j; the hat marks an omitted factor). The caller canonicalizes
// the resulting wedge lists in its own representation.
#pragma once

#include <functional>
#include <vector>

#include "gcalc/errors.hpp"

namespace gcalc {

// A: the coefficient algebra, V: an algebroid element (an A-multiple of a
// generator, in the settings used here).
template <class A, class V>
struct AlgebroidOps {
  std::function<std::vector<V>(const V&, const V&)> bracket;  // [X,Y], a sum
  std::function<A(const V&, const A&)> act;                   // X(f)
  std::function<V(const A&, const V&)> scale;                 // f X
  std::function<A(const A&, const A&)> mul;                   // A product
  std::function<A(const A&)> neg;
  std::function<bool(const A&)> is_zero;
};

template <class A, class V>
struct WedgeTerm {
  A coeff;                 // overall A-coefficient
  std::vector<V> factors;  // wedge factors in g
};

namespace detail {

// Fold the A-coefficient into the first factor, via f(X ^ Y) = (fX) ^ Y.
template <class A, class V>
WedgeTerm<A, V> folded(const AlgebroidOps<A, V>& ops, WedgeTerm<A, V> t,
                       const A& unit) {
  if (!t.factors.empty()) {
    t.factors[0] = ops.scale(t.coeff, t.factors[0]);
    t.coeff = unit;
  }
  return t;
}

}  // namespace detail

// [X, Y] as an uncanonicalized sum of wedge terms. `unit` is 1 in A.
template <class A, class V>
std::vector<WedgeTerm<A, V>> schouten_bracket(const AlgebroidOps<A, V>& ops,
                                              const WedgeTerm<A, V>& xraw,
                                              const WedgeTerm<A, V>& yraw,
                                              const A& unit) {
  std::vector<WedgeTerm<A, V>> out;
  const auto x = detail::folded(ops, xraw, unit);
  const auto y = detail::folded(ops, yraw, unit);
  const int m = static_cast<int>(x.factors.size());
  const int n = static_cast<int>(y.factors.size());

  auto emit = [&](A c, std::vector<V> factors, int parity) {
    if (ops.is_zero(c)) return;
    if (parity & 1) c = ops.neg(c);
    out.push_back({std::move(c), std::move(factors)});
  };

  if (m == 0 && n == 0) return out;  // [f, g] = 0

  if (m == 0 || n == 0) {
    // [f, Y_1^..^Y_n] with the extra (-1)^n when f sits on the right.
    const bool f_right = (n == 0);
    const auto& f = f_right ? y.coeff : x.coeff;
    const auto& w = f_right ? x : y;
    const int len = f_right ? m : n;
    for (int j = 0; j < len; ++j) {
      A c = ops.mul(ops.act(w.factors[j], f), w.coeff);
      std::vector<V> rest;
      for (int t = 0; t < len; ++t)
        if (t != j) rest.push_back(w.factors[t]);
      emit(std::move(c), std::move(rest), (j + 1) + (f_right ? len : 0));
    }
    return out;
  }

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (const V& b : ops.bracket(x.factors[i], y.factors[j])) {
        std::vector<V> factors;
        factors.reserve(m + n - 1);
        factors.push_back(b);
        for (int t = 0; t < m; ++t)
          if (t != i) factors.push_back(x.factors[t]);
        for (int t = 0; t < n; ++t)
          if (t != j) factors.push_back(y.factors[t]);
        emit(ops.mul(x.coeff, y.coeff), std::move(factors), i + j);
      }
    }
  }
  return out;
}

}  // namespace gcalc
