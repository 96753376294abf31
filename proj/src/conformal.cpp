#include "gcalc/conformal.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace gcalc {

void XSeries::add(const std::vector<int>& exps, const DiffPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

int XSeries::max_total_degree() const {
  int d = 0;
  for (const auto& [e, c] : coeffs) {
    int t = 0;
    for (int x : e) t += x;
    d = std::max(d, t);
  }
  return d;
}

namespace {

int total_deg(const std::vector<int>& e) {
  int t = 0;
  for (int x : e) t += x;
  return t;
}

}  // namespace

XSeries XSeries::combine(const XSeries& a, const XSeries& b, int max_deg) {
  XSeries r(a.nvars + b.nvars);
  for (const auto& [ea, ca] : a.coeffs) {
    const int da = total_deg(ea);
    if (da > max_deg) continue;
    for (const auto& [eb, cb] : b.coeffs) {
      if (da + total_deg(eb) > max_deg) continue;
      std::vector<int> e = ea;
      e.insert(e.end(), eb.begin(), eb.end());
      r.add(e, ca * cb);
    }
  }
  return r;
}

XSeries XSeries::remap(int new_nvars, const std::vector<int>& target) const {
  XSeries r(new_nvars);
  for (const auto& [e, c] : coeffs) {
    std::vector<int> ne(new_nvars, 0);
    for (int i = 0; i < nvars; ++i) ne[target[i]] += e[i];
    r.add(ne, c);
  }
  return r;
}

XSeries XSeries::deriv(int v, int times) const {
  if (times == 0) return *this;
  XSeries r(nvars);
  for (const auto& [e, c] : coeffs) {
    if (e[v] < times) continue;
    Rat fall(1);
    for (int t = 0; t < times; ++t) fall *= Rat(e[v] - t);
    std::vector<int> ne = e;
    ne[v] -= times;
    r.add(ne, fall * c);
  }
  return r;
}

XSeries XSeries::extract(int v, int s) const {
  XSeries r(nvars - 1);
  for (const auto& [e, c] : coeffs) {
    if (e[v] != s) continue;
    std::vector<int> ne;
    ne.reserve(nvars - 1);
    for (int i = 0; i < nvars; ++i)
      if (i != v) ne.push_back(e[i]);
    r.add(ne, c);
  }
  return r;
}

XSeries XSeries::map_coeffs(
    const std::function<DiffPoly(const DiffPoly&)>& f) const {
  XSeries r(nvars);
  for (const auto& [e, c] : coeffs) r.add(e, f(c));
  return r;
}

XSeries XSeries::truncated(int max_deg) const {
  XSeries r(nvars);
  for (const auto& [e, c] : coeffs) {
    int t = 0;
    for (int x : e) t += x;
    if (t <= max_deg) r.add(e, c);
  }
  return r;
}

XSeries XSeries::scaled(const Rat& s) const {
  XSeries r(nvars);
  if (gcalc::is_zero(s)) return r;
  for (const auto& [e, c] : coeffs) r.add(e, s * c);
  return r;
}

namespace {

XSeries series_mul(const XSeries& a, const XSeries& b, int max_deg) {
  XSeries r(a.nvars);
  for (const auto& [ea, ca] : a.coeffs) {
    const int da = total_deg(ea);
    if (da > max_deg) continue;
    for (const auto& [eb, cb] : b.coeffs) {
      if (da + total_deg(eb) > max_deg) continue;
      std::vector<int> e = ea;
      for (int i = 0; i < r.nvars; ++i) e[i] += eb[i];
      r.add(e, ca * cb);
    }
  }
  return r;
}

int perm_sign(const std::vector<int>& p) {
  int sign = 1;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = static_cast<size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

template <class F>
void for_each_permutation(int k, F&& fn) {
  std::vector<int> p(k);
  for (int i = 0; i < k; ++i) p[i] = i;
  do {
    fn(p, perm_sign(p));
  } while (std::next_permutation(p.begin(), p.end()));
}

std::vector<int> apply_perm(const std::vector<int>& p,
                            const std::vector<int>& v) {
  std::vector<int> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[p[i]];
  return r;
}

std::vector<int> insert_at(const std::vector<int>& v, int pos, int value) {
  std::vector<int> r;
  r.reserve(v.size() + 1);
  r.insert(r.end(), v.begin(), v.begin() + pos);
  r.push_back(value);
  r.insert(r.end(), v.begin() + pos, v.end());
  return r;
}

Rat mindex_factorial(const std::vector<int>& m) {
  Rat r(1);
  for (int x : m) r *= rat_factorial(x);
  return r;
}

void tensor_add(GenTensor& t, const std::vector<int>& gens,
                const std::vector<int>& exps, const DiffPoly& c) {
  if (c.is_zero()) return;
  auto it = t.find(gens);
  if (it == t.end())
    it = t.emplace(gens, XSeries(static_cast<int>(exps.size()))).first;
  it->second.add(exps, c);
  if (it->second.is_zero()) t.erase(it);
}

}  // namespace

GenTensor skew_canonicalize(
    int arity, const std::vector<std::pair<std::vector<int>, XSeries>>& raw) {
  // merge parts sharing a generator tuple before permuting
  GenTensor merged;
  for (const auto& [gens, series] : raw)
    for (const auto& [exps, coeff] : series.coeffs)
      tensor_add(merged, gens, exps, coeff);
  GenTensor out;
  const Rat inv_fact = Rat(1) / rat_factorial(arity);
  for (const auto& [gens, series] : merged) {
    for (const auto& [exps, coeff] : series.coeffs) {
      for_each_permutation(arity, [&](const std::vector<int>& p, int sign) {
        tensor_add(out, apply_perm(p, gens), apply_perm(p, exps),
                   (Rat(sign) * inv_fact) * coeff);
      });
    }
  }
  return out;
}

ConformalCtxPtr make_conformal_context(LCAPresentation r, ModuleSpec spec) {
  return std::make_shared<const ConformalContext>(
      ConformalContext{std::move(r), std::move(spec)});
}

ConformalCochain ConformalCochain::from_raw(
    int degree, std::vector<std::pair<std::vector<int>, XSeries>> raw) {
  ConformalCochain c(degree);
  c.t_ = skew_canonicalize(degree, raw);
  return c;
}

ConformalCochain ConformalCochain::scalar(const DiffPoly& v) {
  ConformalCochain c(0);
  if (!v.is_zero()) {
    XSeries s(0);
    s.add({}, v);
    c.t_.emplace(std::vector<int>{}, std::move(s));
  }
  return c;
}

bool ConformalCochain::raw_zero() const { return t_.empty(); }

int ConformalCochain::max_lambda_degree() const {
  int d = 0;
  for (const auto& [g, s] : t_) d = std::max(d, s.max_total_degree());
  return d;
}

ConformalCochain ConformalCochain::operator+(const ConformalCochain& o) const {
  if (raw_zero()) return o;
  if (o.raw_zero()) return *this;
  if (deg_ != o.deg_) throw DegreeMismatch("cochain sum of unequal degrees");
  ConformalCochain r = *this;
  for (const auto& [g, s] : o.t_)
    for (const auto& [e, c] : s.coeffs) tensor_add(r.t_, g, e, c);
  return r;
}

ConformalCochain ConformalCochain::operator-() const { return scaled(Rat(-1)); }

ConformalCochain ConformalCochain::scaled(const Rat& c) const {
  ConformalCochain r(deg_);
  if (is_zero(c)) return r;
  for (const auto& [g, s] : t_) r.t_.emplace(g, s.scaled(c));
  return r;
}

TruncatedChain TruncatedChain::from_raw(
    int degree, int trust,
    std::vector<std::pair<std::vector<int>, XSeries>> raw) {
  TruncatedChain x(degree, trust);
  for (auto& [g, s] : raw) s = s.truncated(trust);
  x.t_ = skew_canonicalize(degree, raw);
  return x;
}

TruncatedChain TruncatedChain::constant(const Rat& c, int trust) {
  TruncatedChain x(0, trust);
  if (!is_zero(c)) {
    XSeries s(0);
    s.add({}, DiffPoly(c));
    x.t_.emplace(std::vector<int>{}, std::move(s));
  }
  return x;
}

bool TruncatedChain::zero_within_trust() const {
  for (const auto& [g, s] : t_)
    for (const auto& [e, c] : s.coeffs) {
      int tot = 0;
      for (int x : e) tot += x;
      if (tot <= trust_ && !c.is_zero()) return false;
    }
  return true;
}

bool TruncatedChain::satisfies_del_constraint() const {
  for (const auto& [g, s] : t_) {
    const int k = static_cast<int>(g.size());
    for (const auto& [e, c] : s.coeffs) {
      int tot = 0;
      for (int x : e) tot += x;
      if (tot >= trust_) continue;
      DiffPoly sum;
      for (int j = 0; j < k; ++j) {
        std::vector<int> up = e;
        ++up[j];
        auto it = s.coeffs.find(up);
        if (it != s.coeffs.end()) sum += Rat(e[j] + 1) * it->second;
      }
      if (!(sum == total_derivative(c))) return false;
    }
  }
  return true;
}

TruncatedChain TruncatedChain::operator+(const TruncatedChain& o) const {
  if (t_.empty()) {
    TruncatedChain r = o;
    r.trust_ = std::min(trust_, o.trust_);
    return r;
  }
  if (o.t_.empty()) {
    TruncatedChain r = *this;
    r.trust_ = std::min(trust_, o.trust_);
    return r;
  }
  if (deg_ != o.deg_) throw DegreeMismatch("chain sum of unequal degrees");
  TruncatedChain r = *this;
  r.trust_ = std::min(trust_, o.trust_);
  for (const auto& [g, s] : o.t_)
    for (const auto& [e, c] : s.coeffs) tensor_add(r.t_, g, e, c);
  return r;
}

TruncatedChain TruncatedChain::operator-() const { return scaled(Rat(-1)); }

TruncatedChain TruncatedChain::scaled(const Rat& c) const {
  TruncatedChain r(deg_, trust_);
  if (is_zero(c)) return r;
  for (const auto& [g, s] : t_) r.t_.emplace(g, s.scaled(c));
  return r;
}

TruncatedChain chain_expand(const ChainGauge& g, int trust) {
  const int k = static_cast<int>(g.gens.size());
  if (k == 0) throw InputError("gauge needs at least one generator slot");
  // psi(x_1 - x_k, ..., x_{k-1} - x_k)
  XSeries shifted(k);
  for (const auto& [n, c] : g.psi) {
    std::vector<int> s(k - 1, 0);
    std::function<void(int, int, Rat)> rec = [&](int t, int extra,
                                                 Rat coef) {
      if (t == k - 1) {
        std::vector<int> e = s;
        e.push_back(extra);
        shifted.add(e, coef * c);
        return;
      }
      for (int st = 0; st <= n[t]; ++st) {
        s[t] = st;
        Rat cc = coef * rat_binomial(n[t], st);
        if ((n[t] - st) % 2) cc = -cc;
        rec(t + 1, extra + n[t] - st, cc);
      }
    };
    rec(0, 0, Rat(1));
  }
  // e^{x_k del}: entry (e, c) spawns (e + r e_k, del^r c / r!)
  XSeries full(k);
  for (const auto& [e, c] : shifted.coeffs) {
    int tot = 0;
    for (int x : e) tot += x;
    DiffPoly cur = c;
    for (int r = 0; tot + r <= trust; ++r) {
      std::vector<int> ne = e;
      ne[k - 1] += r;
      full.add(ne, (Rat(1) / rat_factorial(r)) * cur);
      cur = total_derivative(cur);
    }
  }
  return TruncatedChain::from_raw(k, trust, {{g.gens, full}});
}

TruncatedChain chain_wedge(const TruncatedChain& x, const TruncatedChain& y) {
  const int trust = std::min(x.trust(), y.trust());
  std::vector<std::pair<std::vector<int>, XSeries>> raw;
  for (const auto& [gx, sx] : x.parts())
    for (const auto& [gy, sy] : y.parts()) {
      std::vector<int> g = gx;
      g.insert(g.end(), gy.begin(), gy.end());
      raw.push_back({std::move(g), XSeries::combine(sx, sy, trust)});
    }
  return TruncatedChain::from_raw(x.degree() + y.degree(), trust,
                                  std::move(raw));
}

namespace {

int series_action_bound(const XSeries& s, const ModuleSpec& spec,
                        int max_total) {
  int b = -1;
  for (const auto& [e, c] : s.coeffs) {
    int tot = 0;
    for (int x : e) tot += x;
    if (tot > max_total) continue;
    b = std::max(b, spec.action_degree_bound(c));
  }
  return b;
}

int tensor_action_bound(const GenTensor& t, const ModuleSpec& spec,
                        int max_total) {
  int b = -1;
  for (const auto& [g, s] : t)
    b = std::max(b, series_action_bound(s, spec, max_total));
  return b;
}

}  // namespace

int bracket_output_trust(const TruncatedChain& x, const TruncatedChain& y,
                         const ConformalContext& ctx) {
  int n = std::min(x.trust(), y.trust());
  if (!ctx.R.zero_bracket()) n -= ctx.R.max_lambda_plus_del_degree();
  if (!ctx.spec.is_zero_action()) {
    while (n >= 0) {
      int sy = std::max(
          tensor_action_bound(y.parts(), ctx.spec, std::min(n, y.trust())),
          0);
      int sx = std::max(
          tensor_action_bound(x.parts(), ctx.spec, std::min(n, x.trust())),
          0);
      if (n + sy <= x.trust() && n + sx <= y.trust() && n <= x.trust() &&
          n <= y.trust())
        break;
      --n;
    }
  }
  return n;
}

TruncatedChain chain_bracket(const TruncatedChain& x, const TruncatedChain& y,
                             const ConformalContext& ctx) {
  const int h = x.degree(), kh = y.degree();
  const int K = h + kh - 1;
  const int out_trust = bracket_output_trust(x, y, ctx);
  const int avail = std::min(x.trust(), y.trust());
  if (out_trust < 0)
    throw InsufficientOrder(avail - out_trust, avail, "chain_bracket");
  std::vector<std::pair<std::vector<int>, XSeries>> raw;

  for (const auto& [gx, sx] : x.parts()) {
    for (const auto& [gy, sy] : y.parts()) {
      // bracket sum: slot ii of x against slot jj of y
      for (int ii = 0; ii < h; ++ii) {
        for (int jj = 0; jj < kh; ++jj) {
          const auto& terms = ctx.R.bracket(gx[ii], gy[jj]);
          if (terms.empty()) continue;
          // variables: outputs 0..K-1, temporary y at K
          std::vector<int> mapx(h), mapy(kh);
          for (int t = 0; t < h; ++t) mapx[t] = t;
          for (int t = 0; t < kh; ++t)
            mapy[t] = (t == jj) ? K : (t < jj ? h + t : h + t - 1);
          int max_pq = 0;
          for (const auto& tr : terms) max_pq = std::max(max_pq, tr.p + tr.q);
          const int cap = out_trust + max_pq;
          XSeries base = series_mul(sx.truncated(cap).remap(K + 1, mapx),
                                    sy.truncated(cap).remap(K + 1, mapy), cap);
          std::vector<int> rest;
          for (int t = 0; t < kh; ++t)
            if (t != jj) rest.push_back(gy[t]);
          std::vector<int> merge(K + 1);
          for (int t = 0; t < K; ++t) merge[t] = t;
          merge[K] = ii;
          for (const auto& tr : terms) {
            XSeries s = base.deriv(ii, tr.p).remap(K, merge).deriv(ii, tr.q);
            Rat c = tr.c;
            // (-1)^{q} from del-normalization, (-1)^{h+j+1} = (-1)^{jj}
            if ((tr.q + jj) % 2) c = -c;
            std::vector<int> g = gx;
            g[ii] = tr.k;
            g.insert(g.end(), rest.begin(), rest.end());
            raw.push_back({std::move(g), s.scaled(c)});
          }
        }
      }
      if (ctx.spec.is_zero_action()) continue;
      // action of x's slot ii on y's coefficients
      const XSeries sy_win = sy.truncated(out_trust);
      const XSeries sx_win = sx.truncated(out_trust);
      for (int ii = 0; ii < h; ++ii) {
        int bound = series_action_bound(sy_win, ctx.spec, out_trust);
        std::vector<int> mapy(kh);
        for (int t = 0; t < kh; ++t) mapy[t] = (h - 1) + t;
        std::vector<int> g;
        for (int t = 0; t < h; ++t)
          if (t != ii) g.push_back(gx[t]);
        g.insert(g.end(), gy.begin(), gy.end());
        const XSeries sx_ext_win = sx.truncated(out_trust + std::max(bound, 0));
        for (int s = 0; s <= bound; ++s) {
          XSeries acted = sy_win.map_coeffs(
              [&](const DiffPoly& c) { return ctx.spec.act(gx[ii], s, c); });
          if (acted.is_zero()) continue;
          XSeries ext = sx_ext_win.extract(ii, s).scaled(rat_factorial(s));
          if (ext.is_zero()) continue;
          std::vector<int> mapx(h - 1);
          for (int t = 0; t < h - 1; ++t) mapx[t] = t;
          XSeries prod = series_mul(ext.remap(K, mapx), acted.remap(K, mapy),
                                    out_trust);
          // (-1)^{h+i} with 1-based i = ii+1
          raw.push_back({g, ((h + ii + 1) % 2) ? prod.scaled(Rat(-1)) : prod});
        }
      }
      // action of y's slot jj on x's coefficients
      for (int jj = 0; jj < kh; ++jj) {
        int bound = series_action_bound(sx_win, ctx.spec, out_trust);
        std::vector<int> mapx(h);
        for (int t = 0; t < h; ++t) mapx[t] = t;
        std::vector<int> g = gx;
        for (int t = 0; t < kh; ++t)
          if (t != jj) g.push_back(gy[t]);
        const XSeries sy_ext_win = sy.truncated(out_trust + std::max(bound, 0));
        for (int s = 0; s <= bound; ++s) {
          XSeries acted = sx_win.map_coeffs(
              [&](const DiffPoly& c) { return ctx.spec.act(gy[jj], s, c); });
          if (acted.is_zero()) continue;
          XSeries ext = sy_ext_win.extract(jj, s).scaled(rat_factorial(s));
          if (ext.is_zero()) continue;
          std::vector<int> mapy2(kh - 1);
          for (int t = 0; t < kh - 1; ++t) mapy2[t] = h + t;
          XSeries prod = series_mul(acted.remap(K, mapx),
                                    ext.remap(K, mapy2), out_trust);
          // (-1)^{h+i} with 1-based i = h+jj+1
          raw.push_back({g, ((jj + 1) % 2) ? prod.scaled(Rat(-1)) : prod});
        }
      }
    }
  }
  return TruncatedChain::from_raw(std::max(K, 0), out_trust, std::move(raw));
}

ConformalCochain cochain_d(const ConformalCochain& c,
                           const ConformalContext& ctx) {
  const int k = c.degree();
  std::vector<std::pair<std::vector<int>, XSeries>> raw;
  auto push = [&](std::vector<int> g, std::vector<int> e, DiffPoly v) {
    if (v.is_zero()) return;
    XSeries s(static_cast<int>(e.size()));
    s.add(e, v);
    raw.push_back({std::move(g), std::move(s)});
  };
  for (const auto& [g, series] : c.parts()) {
    for (const auto& [e, f] : series.coeffs) {
      // action term: insert a generator at position pos
      for (int pos = 0; pos <= k; ++pos) {
        for (int gen = 0; gen < ctx.R.rank(); ++gen) {
          for (int s = 0; s <= ctx.spec.action_degree_bound(f); ++s) {
            DiffPoly acted = ctx.spec.act(gen, s, f);
            if (acted.is_zero()) continue;
            if (pos % 2) acted = Rat(-1) * acted;  // (-1)^{i+1}, 1-based i
            push(insert_at(g, pos, gen), insert_at(e, pos, s),
                 std::move(acted));
          }
        }
      }
      // bracket term: c's slot si receives the bracket target
      for (int si = 0; si < k; ++si) {
        for (int ji = si + 1; ji <= k; ++ji) {
          for (int alpha = 0; alpha < ctx.R.rank(); ++alpha) {
            for (int beta = 0; beta < ctx.R.rank(); ++beta) {
              for (const auto& tr : ctx.R.bracket(alpha, beta)) {
                if (tr.k != g[si]) continue;
                int nu_pow = e[si] + tr.q;
                for (int t = 0; t <= nu_pow; ++t) {
                  Rat coeff = tr.c * rat_binomial(nu_pow, t);
                  if ((tr.q + ji) % 2) coeff = -coeff;
                  std::vector<int> ng = g;
                  ng[si] = alpha;
                  std::vector<int> ne = e;
                  ne[si] = tr.p + t;
                  push(insert_at(ng, ji, beta), insert_at(ne, ji, nu_pow - t),
                       coeff * f);
                }
              }
            }
          }
        }
      }
    }
  }
  return ConformalCochain::from_raw(k + 1, std::move(raw));
}

namespace {

// Eliminate the last lambda: la_k -> -(la_1 + ... + la_{k-1} + del).
std::map<std::vector<int>, DiffPoly> eliminate_last(const XSeries& f, int k) {
  std::map<std::vector<int>, DiffPoly> out;
  auto acc_add = [](std::map<std::vector<int>, DiffPoly>& m,
                    const std::vector<int>& e, const DiffPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = m.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) m.erase(it);
    }
  };
  for (const auto& [e, c] : f.coeffs) {
    std::map<std::vector<int>, DiffPoly> cur{{std::vector<int>(k - 1, 0), c}};
    for (int r = 0; r < e[k - 1]; ++r) {
      std::map<std::vector<int>, DiffPoly> next;
      for (const auto& [n, v] : cur) {
        acc_add(next, n, -total_derivative(v));
        for (int t = 0; t < k - 1; ++t) {
          std::vector<int> nn = n;
          ++nn[t];
          acc_add(next, nn, -v);
        }
      }
      cur = std::move(next);
    }
    for (const auto& [n, v] : cur) {
      std::vector<int> shifted(k - 1);
      for (int t = 0; t < k - 1; ++t) shifted[t] = n[t] + e[t];
      acc_add(out, shifted, v);
    }
  }
  return out;
}

}  // namespace

PolyLambdaCochain to_poly_lambda(const ConformalCochain& c) {
  PolyLambdaCochain p;
  p.degree = c.degree();
  if (c.degree() == 0) {
    for (const auto& [g, s] : c.parts())
      for (const auto& [e, v] : s.coeffs)
        if (!v.is_zero()) p.entries[{g, e}] = v;
    return p;
  }
  for (const auto& [g, s] : c.parts())
    for (const auto& [e, v] : eliminate_last(s, c.degree()))
      if (!v.is_zero()) p.entries[{g, e}] = v;
  return p;
}

ConformalCochain from_poly_lambda(const PolyLambdaCochain& p) {
  std::vector<std::pair<std::vector<int>, XSeries>> raw;
  for (const auto& [key, v] : p.entries) {
    std::vector<int> e = key.second;
    if (p.degree >= 1) e.push_back(0);
    XSeries s(p.degree);
    s.add(e, v);
    raw.push_back({key.first, std::move(s)});
  }
  return ConformalCochain::from_raw(p.degree, std::move(raw));
}

bool cochain_is_zero(const ConformalCochain& a) {
  if (a.raw_zero()) return true;
  if (a.degree() == 0) {
    DiffPoly v;
    for (const auto& [g, s] : a.parts())
      for (const auto& [e, c] : s.coeffs) v += c;
    return is_total_derivative(v).exact;
  }
  return to_poly_lambda(a).entries.empty();
}

bool cochain_equal(const ConformalCochain& a, const ConformalCochain& b) {
  const bool za = cochain_is_zero(a), zb = cochain_is_zero(b);
  if (za || zb) return za && zb;
  if (a.degree() != b.degree()) return false;
  if (a.degree() == 0) {
    DiffPoly va, vb;
    for (const auto& [g, s] : a.parts())
      for (const auto& [e, v] : s.coeffs) va += v;
    for (const auto& [g, s] : b.parts())
      for (const auto& [e, v] : s.coeffs) vb += v;
    return quotient_equal(va, vb);
  }
  return to_poly_lambda(a) == to_poly_lambda(b);
}

bool basic_equal(const BasicCochain& a, const BasicCochain& b) {
  if (a.raw_zero() && b.raw_zero()) return true;
  return a.degree() == b.degree() && a.parts() == b.parts();
}

ConformalCochain contract(const TruncatedChain& x, const ConformalCochain& c) {
  const int h = x.degree(), k = c.degree();
  if (h > k) return ConformalCochain(0);
  const int need = c.max_lambda_degree();
  if (x.trust() < need) throw InsufficientOrder(need, x.trust(), "contract");
  const int pref = (h * (h - 1) / 2) % 2;
  std::vector<std::pair<std::vector<int>, XSeries>> raw;
  for (const auto& [gx, sx] : x.parts()) {
    for (const auto& [gc, F] : c.parts()) {
      if (!std::equal(gx.begin(), gx.end(), gc.begin())) continue;
      for (const auto& [m, P] : sx.coeffs) {
        for (const auto& [e, f] : F.coeffs) {
          if (!std::equal(m.begin(), m.end(), e.begin())) continue;
          Rat factor = mindex_factorial(m);
          if (pref) factor = -factor;
          std::vector<int> og(gc.begin() + h, gc.end());
          std::vector<int> oe(e.begin() + h, e.end());
          XSeries s(k - h);
          s.add(oe, factor * (P * f));
          raw.push_back({std::move(og), std::move(s)});
        }
      }
    }
  }
  return ConformalCochain::from_raw(k - h, std::move(raw));
}

ConformalCochain lie_derive(const TruncatedChain& x, const ConformalCochain& c,
                            const ConformalContext& ctx) {
  const int h = x.degree(), k = c.degree();
  if (h > k + 1) return ConformalCochain(0);
  const int need =
      c.max_lambda_degree() +
      (ctx.R.zero_bracket() ? 0 : ctx.R.max_lambda_plus_del_degree());
  if (x.trust() < need) throw InsufficientOrder(need, x.trust(), "lie_derive");
  const int K = k - h + 1;
  const int pref = (h * (h - 1) / 2) % 2;
  std::vector<std::pair<std::vector<int>, XSeries>> raw;
  auto push = [&](std::vector<int> g, std::vector<int> e, DiffPoly v,
                  int parity) {
    if (v.is_zero()) return;
    if ((parity + pref) % 2) v = Rat(-1) * v;
    XSeries s(K);
    s.add(e, v);
    raw.push_back({std::move(g), std::move(s)});
  };

  for (const auto& [gx, sx] : x.parts()) {
    for (const auto& [m, P] : sx.coeffs) {
      const Rat mfact = mindex_factorial(m);
      if (!ctx.spec.is_zero_action()) {
        // removed chain slot ii acts on the cochain value; sign (-1)^{i+1}
        for (int ii = 0; ii < h; ++ii) {
          std::vector<int> gpre, epre;
          for (int t = 0; t < h; ++t)
            if (t != ii) {
              gpre.push_back(gx[t]);
              epre.push_back(m[t]);
            }
          for (const auto& [gc, F] : c.parts()) {
            if (!std::equal(gpre.begin(), gpre.end(), gc.begin())) continue;
            for (const auto& [e, f] : F.coeffs) {
              if (!std::equal(epre.begin(), epre.end(), e.begin())) continue;
              DiffPoly acted = ctx.spec.act(gx[ii], m[ii], f);
              push(std::vector<int>(gc.begin() + (h - 1), gc.end()),
                   std::vector<int>(e.begin() + (h - 1), e.end()),
                   mfact * (P * acted), ii);
            }
          }
        }
        // an output generator acts on the chain coefficient; sign (-1)^i
        if (h <= k) {
          for (const auto& [gc, F] : c.parts()) {
            if (!std::equal(gx.begin(), gx.end(), gc.begin())) continue;
            for (const auto& [e, f] : F.coeffs) {
              if (!std::equal(m.begin(), m.end(), e.begin())) continue;
              std::vector<int> grest(gc.begin() + h, gc.end());
              std::vector<int> erest(e.begin() + h, e.end());
              for (int gen = 0; gen < ctx.R.rank(); ++gen) {
                for (int s = 0; s <= ctx.spec.action_degree_bound(P); ++s) {
                  DiffPoly acted = ctx.spec.act(gen, s, P);
                  if (acted.is_zero()) continue;
                  for (int pos = 0; pos < K; ++pos)
                    push(insert_at(grest, pos, gen), insert_at(erest, pos, s),
                         mfact * (acted * f), h + pos + 1);
                }
              }
            }
          }
        }
      }
      if (!ctx.R.zero_bracket()) {
        // bracket of chain slots ii < jj; sign (-1)^{j+1}
        for (int ii = 0; ii < h; ++ii) {
          for (int jj = ii + 1; jj < h; ++jj) {
            for (const auto& tr : ctx.R.bracket(gx[ii], gx[jj])) {
              if (m[ii] < tr.p) continue;
              int ei = m[ii] + m[jj] - tr.p - tr.q;
              if (ei < 0) continue;
              Rat coeff = tr.c * rat_binomial(ei + tr.q, m[ii] - tr.p) * mfact;
              if (tr.q % 2) coeff = -coeff;
              std::vector<int> gpre, epre;
              for (int t = 0; t < h; ++t) {
                if (t == jj) continue;
                gpre.push_back(t == ii ? tr.k : gx[t]);
                epre.push_back(t == ii ? ei : m[t]);
              }
              for (const auto& [gc, F] : c.parts()) {
                if (!std::equal(gpre.begin(), gpre.end(), gc.begin()))
                  continue;
                for (const auto& [e, f] : F.coeffs) {
                  if (!std::equal(epre.begin(), epre.end(), e.begin()))
                    continue;
                  push(std::vector<int>(gc.begin() + (h - 1), gc.end()),
                       std::vector<int>(e.begin() + (h - 1), e.end()),
                       coeff * (P * f), jj);
                }
              }
            }
          }
        }
        // bracket of chain slot ii with an inserted output argument
        for (int ii = 0; ii < h && h <= k; ++ii) {
          for (int gen = 0; gen < ctx.R.rank(); ++gen) {
            for (const auto& tr : ctx.R.bracket(gx[ii], gen)) {
              if (m[ii] < tr.p) continue;
              std::vector<int> gpre = gx;
              gpre[ii] = tr.k;
              for (const auto& [gc, F] : c.parts()) {
                if (!std::equal(gpre.begin(), gpre.end(), gc.begin()))
                  continue;
                for (const auto& [e, f] : F.coeffs) {
                  bool match = true;
                  for (int t = 0; t < h && match; ++t)
                    if (t != ii && e[t] != m[t]) match = false;
                  if (!match) continue;
                  int ei = e[ii];
                  int npos = ei + tr.q + tr.p - m[ii];
                  if (npos < 0) continue;
                  Rat coeff =
                      tr.c * rat_binomial(ei + tr.q, m[ii] - tr.p) * mfact;
                  if (tr.q % 2) coeff = -coeff;
                  std::vector<int> grest(gc.begin() + h, gc.end());
                  std::vector<int> erest(e.begin() + h, e.end());
                  for (int pos = 0; pos < K; ++pos)
                    push(insert_at(grest, pos, gen),
                         insert_at(erest, pos, npos), coeff * (P * f),
                         h + pos);
                }
              }
            }
          }
        }
      }
    }
  }
  return ConformalCochain::from_raw(K, std::move(raw));
}

TruncatedChain chain_d_zero_bracket(const TruncatedChain& x,
                                    const ConformalContext& ctx) {
  if (!ctx.R.zero_bracket()) throw NonzeroBracket();
  return TruncatedChain(std::max(x.degree() - 1, 0), x.trust());
}

bool chain_equal_trust(const TruncatedChain& a, const TruncatedChain& b) {
  const int trust = std::min(a.trust(), b.trust());
  auto lookup = [&](const GenTensor& t, const std::vector<int>& g,
                    const std::vector<int>& e) -> DiffPoly {
    auto it = t.find(g);
    if (it == t.end()) return {};
    auto jt = it->second.coeffs.find(e);
    return jt == it->second.coeffs.end() ? DiffPoly{} : jt->second;
  };
  auto contained = [&](const TruncatedChain& p, const TruncatedChain& q) {
    for (const auto& [g, s] : p.parts())
      for (const auto& [e, c] : s.coeffs) {
        int tot = 0;
        for (int v : e) tot += v;
        if (tot > trust) continue;
        if (!(c == lookup(q.parts(), g, e))) return false;
      }
    return true;
  };
  if (a.zero_within_trust() && b.zero_within_trust()) return true;
  if (a.degree() != b.degree()) return false;
  return contained(a, b) && contained(b, a);
}

Calculus<TruncatedChain, ConformalCochain> build_conformal_calculus(
    const ConformalCtxPtr& ctx) {
  Calculus<TruncatedChain, ConformalCochain> c;
  c.gv.add = [](const TruncatedChain& a, const TruncatedChain& b) {
    return a + b;
  };
  c.gv.neg = [](const TruncatedChain& a) { return -a; };
  c.gv.scale = [](const Rat& r, const TruncatedChain& a) {
    return a.scaled(r);
  };
  c.gv.eq = chain_equal_trust;
  c.gv.is_zero = [](const TruncatedChain& a) { return a.zero_within_trust(); };
  c.gv.degree = [](const TruncatedChain& a) { return a.degree(); };
  c.gv.show = [](const TruncatedChain& a) { return a.str(); };
  c.ov.add = [](const ConformalCochain& a, const ConformalCochain& b) {
    return a + b;
  };
  c.ov.neg = [](const ConformalCochain& a) { return -a; };
  c.ov.scale = [](const Rat& r, const ConformalCochain& a) {
    return a.scaled(r);
  };
  c.ov.eq = cochain_equal;
  c.ov.is_zero = cochain_is_zero;
  c.ov.degree = [](const ConformalCochain& a) { return a.degree(); };
  c.ov.show = [](const ConformalCochain& a) { return a.str(); };
  c.wedge = chain_wedge;
  c.bracket = [ctx](const TruncatedChain& a, const TruncatedChain& b) {
    return chain_bracket(a, b, *ctx);
  };
  c.d = [ctx](const ConformalCochain& om) { return cochain_d(om, *ctx); };
  c.contract = [](const TruncatedChain& x, const ConformalCochain& om) {
    return contract(x, om);
  };
  c.lie = [ctx](const TruncatedChain& x, const ConformalCochain& om) {
    return lie_derive(x, om, *ctx);
  };
  return c;
}

namespace {

DiffPoly random_vpoly(std::mt19937& rng, int vgens) {
  std::uniform_int_distribution<int> coeff(-3, 3), gen(0, vgens - 1),
      ord(0, 2), deg(1, 2), nt(1, 2);
  DiffPoly p;
  for (int t = nt(rng); t > 0; --t) {
    DiffPoly mono(Rat(coeff(rng)));
    for (int i = deg(rng); i > 0; --i)
      mono = mono * DiffPoly::var(gen(rng), ord(rng));
    p += mono;
  }
  return p;
}

}  // namespace

std::vector<ConformalCochain> sample_cochains(const ConformalContext& ctx,
                                              int count, int max_degree,
                                              int lorder, int vgens,
                                              unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> degree(0, max_degree),
      gen(0, ctx.R.rank() - 1), lexp(0, lorder), nparts(1, 2);
  std::vector<ConformalCochain> out;
  while (static_cast<int>(out.size()) < count) {
    int k = degree(rng);
    std::vector<std::pair<std::vector<int>, XSeries>> raw;
    for (int p = nparts(rng); p > 0; --p) {
      std::vector<int> g(k), e(k);
      for (int t = 0; t < k; ++t) {
        g[t] = gen(rng);
        e[t] = lexp(rng);
      }
      XSeries s(k);
      s.add(e, random_vpoly(rng, vgens));
      raw.push_back({std::move(g), std::move(s)});
    }
    ConformalCochain c = ConformalCochain::from_raw(k, std::move(raw));
    if (!c.raw_zero() || k == 0) out.push_back(std::move(c));
  }
  return out;
}

std::vector<TruncatedChain> sample_chains(const ConformalContext& ctx,
                                          int count, int max_degree, int trust,
                                          int vgens, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> degree(1, max_degree),
      gen(0, ctx.R.rank() - 1), pexp(0, 2), nterms(1, 2);
  std::vector<TruncatedChain> out;
  while (static_cast<int>(out.size()) < count) {
    int k = degree(rng);
    ChainGauge g;
    g.gens.resize(k);
    for (int t = 0; t < k; ++t) g.gens[t] = gen(rng);
    for (int t = nterms(rng); t > 0; --t) {
      std::vector<int> e(k - 1);
      for (auto& x : e) x = pexp(rng);
      DiffPoly c = random_vpoly(rng, vgens);
      auto [it, ins] = g.psi.emplace(e, c);
      if (!ins) it->second += c;
    }
    out.push_back(chain_expand(g, trust));
  }
  return out;
}

std::string ConformalCochain::str() const {
  std::ostringstream os;
  os << "cochain(deg=" << deg_ << ")";
  for (const auto& [g, s] : t_) {
    os << " [";
    for (size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
    os << "]:" << s.coeffs.size();
  }
  return os.str();
}

std::string TruncatedChain::str() const {
  std::ostringstream os;
  os << "chain(deg=" << deg_ << ",trust=" << trust_ << ")";
  for (const auto& [g, s] : t_) {
    os << " [";
    for (size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
    os << "]:" << s.coeffs.size();
  }
  return os.str();
}

}  // namespace gcalc
