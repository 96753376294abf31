#include "gcalc/varcalc.hpp"

#include <algorithm>
#include <sstream>

namespace gcalc {

namespace {

// Sorts factors, returns the permutation sign; 0 on repeats.
int sort_sign(WedgeKey& t) {
  int sign = 1;
  for (size_t i = 1; i < t.size(); ++i)
    for (size_t j = i; j > 0 && t[j] < t[j - 1]; --j) {
      std::swap(t[j], t[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < t.size(); ++i)
    if (t[i] == t[i - 1]) return 0;
  return sign;
}

}  // namespace

void WedgeMap::add(const WedgeKey& factors, const DiffPoly& coeff) {
  if (coeff.is_zero()) return;
  WedgeKey k = factors;
  int sign = sort_sign(k);
  if (sign == 0) return;
  auto [it, inserted] = terms_.emplace(std::move(k), Rat(sign) * coeff);
  if (!inserted) {
    it->second += Rat(sign) * coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffPoly WedgeMap::skew_value(const WedgeKey& factors) const {
  WedgeKey k = factors;
  int sign = sort_sign(k);
  if (sign == 0) return {};
  auto it = terms_.find(k);
  if (it == terms_.end()) return {};
  return Rat(sign) * it->second;
}

int WedgeMap::max_order() const {
  int n = 0;
  for (const auto& [k, c] : terms_)
    for (const DiffVar& v : k) n = std::max(n, v.ord);
  return n;
}

WedgeMap WedgeMap::operator+(const WedgeMap& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (deg_ != o.deg_) throw DegreeMismatch("wedge sum of unequal degrees");
  WedgeMap r = *this;
  for (const auto& [k, c] : o.terms_) r.add(k, c);
  return r;
}

WedgeMap WedgeMap::operator-() const { return scaled(Rat(-1)); }

WedgeMap WedgeMap::scaled(const Rat& c) const {
  WedgeMap r(deg_);
  if (gcalc::is_zero(c)) return r;
  for (const auto& [k, v] : terms_) r.terms_[k] = c * v;
  return r;
}

bool operator==(const WedgeMap& a, const WedgeMap& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.deg_ == b.deg_ && a.terms_ == b.terms_;
}

std::string WedgeMap::str(const char* factor_prefix) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (const DiffVar& v : k)
      os << "^" << factor_prefix << (v.gen + 1) << "(" << v.ord << ")";
  }
  return os.str();
}

DeRhamForm deRham_d(const DeRhamForm& om) {
  DeRhamForm r(om.degree() + 1);
  for (const auto& [k, f] : om.w.terms()) {
    for (const DiffVar& v : f.support()) {
      WedgeKey nk;
      nk.reserve(k.size() + 1);
      nk.push_back(v);
      nk.insert(nk.end(), k.begin(), k.end());
      r.w.add(nk, partial_derivative(f, v));
    }
  }
  return r;
}

DeRhamForm form_del(const DeRhamForm& om) {
  DeRhamForm r(om.degree());
  for (const auto& [k, f] : om.w.terms()) {
    r.w.add(k, total_derivative(f));
    for (size_t t = 0; t < k.size(); ++t) {
      WedgeKey nk = k;
      ++nk[t].ord;
      r.w.add(nk, f);
    }
  }
  return r;
}

namespace {

// iota by a single generator d/du_v: odd derivation with iota(du_v) = 1.
DeRhamForm contract_generator(DiffVar v, const DeRhamForm& om) {
  DeRhamForm r(om.degree() - 1);
  for (const auto& [k, f] : om.w.terms()) {
    for (size_t t = 0; t < k.size(); ++t) {
      if (!(k[t] == v)) continue;
      WedgeKey nk;
      for (size_t s = 0; s < k.size(); ++s)
        if (s != t) nk.push_back(k[s]);
      r.w.add(nk, (t % 2) ? -f : f);
    }
  }
  return r;
}

}  // namespace

DeRhamForm form_contract(const PolyVectorField& x, const DeRhamForm& om) {
  const int h = x.degree();
  if (h > om.degree()) return DeRhamForm(0);
  DeRhamForm out(om.degree() - h);
  for (const auto& [k, p] : x.w.terms()) {
    DeRhamForm cur = om;
    for (auto it = k.rbegin(); it != k.rend(); ++it)
      cur = contract_generator(*it, cur);
    for (const auto& [ck, cf] : cur.w.terms()) out.w.add(ck, p * cf);
  }
  return out;
}

DeRhamForm form_contract(const EvVectorField& x, const DeRhamForm& om) {
  if (om.degree() < 1) return DeRhamForm(0);
  DeRhamForm r(om.degree() - 1);
  for (const auto& [k, f] : om.w.terms()) {
    for (size_t t = 0; t < k.size(); ++t) {
      const DiffVar v = k[t];
      if (v.gen >= static_cast<int>(x.chars.size())) continue;
      DiffPoly img = total_derivative(x.chars[v.gen], v.ord);
      WedgeKey nk;
      for (size_t s = 0; s < k.size(); ++s)
        if (s != t) nk.push_back(k[s]);
      r.w.add(nk, (t % 2) ? -(f * img) : f * img);
    }
  }
  return r;
}

DeRhamForm form_lie_derive(const PolyVectorField& x, const DeRhamForm& om) {
  DeRhamForm a = form_contract(x, deRham_d(om));
  DeRhamForm b = deRham_d(form_contract(x, om));
  return (x.degree() % 2) ? a + b : a + (-b);
}

PolyVectorField polyvector_wedge(const PolyVectorField& x,
                                 const PolyVectorField& y) {
  PolyVectorField r(x.degree() + y.degree());
  for (const auto& [kx, p] : x.w.terms())
    for (const auto& [ky, q] : y.w.terms()) {
      WedgeKey k = kx;
      k.insert(k.end(), ky.begin(), ky.end());
      r.w.add(k, p * q);
    }
  return r;
}

PolyVectorField polyvector_schouten(const PolyVectorField& x,
                                    const PolyVectorField& y) {
  const int h = x.degree(), kh = y.degree();
  PolyVectorField r(std::max(h + kh - 1, 0));
  for (const auto& [kx, p] : x.w.terms()) {
    for (const auto& [ky, q] : y.w.terms()) {
      WedgeKey full = kx;
      full.insert(full.end(), ky.begin(), ky.end());
      // first sum: alpha over x's slots, P dQ/du_{alpha}
      for (int a = 0; a < h; ++a) {
        DiffPoly d = partial_derivative(q, full[a]);
        if (d.is_zero()) continue;
        WedgeKey rest;
        for (int s = 0; s < h + kh; ++s)
          if (s != a) rest.push_back(full[s]);
        r.w.add(rest, ((h + a + 1) % 2) ? -(p * d) : p * d);
      }
      // second sum: alpha over y's slots, Q dP/du_{alpha}
      for (int a = h; a < h + kh; ++a) {
        DiffPoly d = partial_derivative(p, full[a]);
        if (d.is_zero()) continue;
        WedgeKey rest;
        for (int s = 0; s < h + kh; ++s)
          if (s != a) rest.push_back(full[s]);
        r.w.add(rest, ((h + a + 1) % 2) ? -(q * d) : q * d);
      }
    }
  }
  return r;
}

PolyVectorField polyvector_del(const PolyVectorField& x) {
  PolyVectorField r(x.degree());
  for (const auto& [k, p] : x.w.terms()) {
    r.w.add(k, total_derivative(p));
    for (size_t t = 0; t < k.size(); ++t) {
      if (k[t].ord == 0) continue;  // [del, d/du^(0)] = 0
      WedgeKey nk = k;
      --nk[t].ord;
      r.w.add(nk, -p);
    }
  }
  return r;
}

bool is_evolutionary(const PolyVectorField& x) {
  return polyvector_del(x).is_zero();
}

bool is_evolutionary_truncated(const PolyVectorField& x, int order_bound) {
  PolyVectorField d = polyvector_del(x);
  for (const auto& [k, p] : d.w.terms()) {
    int tot = 0;
    for (const DiffVar& v : k) tot += v.ord;
    if (tot <= order_bound && !p.is_zero()) return false;
  }
  return true;
}

PolyVectorField ev_to_polyvector(const EvVectorField& x, int max_ord) {
  PolyVectorField r(1);
  for (size_t i = 0; i < x.chars.size(); ++i) {
    DiffPoly cur = x.chars[i];
    for (int n = 0; n <= max_ord; ++n) {
      r.w.add({DiffVar{static_cast<int>(i), n}}, cur);
      cur = total_derivative(cur);
    }
  }
  return r;
}

PolyVectorField phi_map(const TruncatedChain& a, int max_ord) {
  if (a.trust() < max_ord)
    throw InsufficientOrder(max_ord, a.trust(), "phi_map");
  PolyVectorField r(a.degree());
  for (const auto& [gens, series] : a.parts()) {
    for (const auto& [m, c] : series.coeffs) {
      int tot = 0;
      for (int v : m) tot += v;
      if (tot > max_ord) continue;
      Rat fact(1);
      WedgeKey k(gens.size());
      for (size_t t = 0; t < gens.size(); ++t) {
        k[t] = DiffVar{gens[t], m[t]};
        fact *= rat_factorial(m[t]);
      }
      r.w.add(k, fact * c);
    }
  }
  return r;
}

ConformalCochain psi_map(const DeRhamForm& om) {
  const int k = om.degree();
  const Rat kfact = rat_factorial(k);
  std::vector<std::pair<std::vector<int>, XSeries>> raw;
  for (const auto& [key, f] : om.w.terms()) {
    std::vector<int> gens(key.size()), exps(key.size());
    for (size_t t = 0; t < key.size(); ++t) {
      gens[t] = key[t].gen;
      exps[t] = key[t].ord;
    }
    XSeries s(k);
    // the form coefficient is the skew tensor value at the increasing
    // tuple; pushing k! of it makes the skew average reproduce it
    s.add(exps, kfact * f);
    raw.push_back({std::move(gens), std::move(s)});
  }
  return ConformalCochain::from_raw(k, std::move(raw));
}

bool form_quotient_equal(const DeRhamForm& a, const DeRhamForm& b) {
  return cochain_equal(psi_map(a), psi_map(b));
}

DiffPoly eval_local(const LocalOperator& s, const PolyVectorField& x) {
  if (s.degree() != x.degree())
    throw DegreeMismatch("local operator degree differs from the argument");
  DiffPoly out;
  for (const auto& [k, f] : s.w.terms()) {
    DiffPoly p = x.w.skew_value(k);
    if (!p.is_zero()) out += f * p;
  }
  return out;
}

DiffPoly eval_local(const LocalOperator& s,
                    const std::vector<EvVectorField>& wedge) {
  const int k = s.degree();
  if (static_cast<int>(wedge.size()) != k)
    throw DegreeMismatch("wedge size differs from the operator degree");
  DiffPoly out;
  for (const auto& [key, f] : s.w.terms()) {
    // det [ del^{m_t} P_{r, i_t} ]_{r,t} via permutation expansion
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    DiffPoly det;
    do {
      int sign = 1;
      {
        std::vector<int> p = perm;
        for (size_t i = 1; i < p.size(); ++i)
          for (size_t j = i; j > 0 && p[j] < p[j - 1]; --j) {
            std::swap(p[j], p[j - 1]);
            sign = -sign;
          }
      }
      DiffPoly prod{Rat(sign)};
      for (int t = 0; t < k && !prod.is_zero(); ++t) {
        const DiffVar v = key[t];
        const auto& chars = wedge[perm[t]].chars;
        if (v.gen >= static_cast<int>(chars.size())) {
          prod = DiffPoly();
          break;
        }
        prod = prod * total_derivative(chars[v.gen], v.ord);
      }
      det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out += f * det;
  }
  return out;
}

LocalOperator local_op_d(const LocalOperator& s) {
  LocalOperator r(s.degree() + 1);
  for (const auto& [key, f] : s.w.terms()) {
    for (const DiffVar& v : f.support()) {
      // insert v into the increasing key; repeated factors vanish
      WedgeKey nk = key;
      auto pos = std::lower_bound(nk.begin(), nk.end(), v);
      if (pos != nk.end() && *pos == v) continue;
      const int p = static_cast<int>(pos - nk.begin());
      nk.insert(pos, v);
      DiffPoly d = partial_derivative(f, v);
      r.w.add(nk, (p % 2) ? -d : d);  // (-1)^{alpha+1} with alpha = p+1
    }
  }
  return r;
}

namespace {

// sign of sorting the concatenation (t ++ rest) of two increasing,
// disjoint halves
int merge_sign(const WedgeKey& t, const WedgeKey& rest) {
  WedgeKey full = t;
  full.insert(full.end(), rest.begin(), rest.end());
  return sort_sign(full);
}

// rest = key \ t as increasing lists; false when t is not a subset
bool subset_rest(const WedgeKey& key, const WedgeKey& t, WedgeKey& rest) {
  rest.clear();
  size_t i = 0;
  for (const DiffVar& v : key) {
    if (i < t.size() && t[i] == v)
      ++i;
    else
      rest.push_back(v);
  }
  return i == t.size();
}

}  // namespace

LocalOperator local_op_contract(const PolyVectorField& x,
                                const LocalOperator& s) {
  const int h = x.degree(), k = s.degree();
  if (h > k) return LocalOperator(0);
  LocalOperator r(k - h);
  const int pref = (h * (h - 1) / 2) % 2;
  for (const auto& [t, p] : x.w.terms()) {
    for (const auto& [key, f] : s.w.terms()) {
      WedgeKey rest;
      if (!subset_rest(key, t, rest)) continue;
      int sign = merge_sign(t, rest);
      if (pref) sign = -sign;
      r.w.add(rest, Rat(sign) * (p * f));
    }
  }
  return r;
}

LocalOperator local_op_contract(const TruncatedChain& x,
                                const LocalOperator& s) {
  int total = 0;
  for (const auto& [key, f] : s.w.terms()) {
    int tot = 0;
    for (const DiffVar& v : key) tot += v.ord;
    total = std::max(total, tot);
  }
  return local_op_contract(phi_map(x, total), s);
}

LocalOperator local_op_lie_derive(const PolyVectorField& x,
                                  const LocalOperator& s) {
  const int h = x.degree(), k = s.degree();
  if (h > k + 1) return LocalOperator(0);
  LocalOperator r(k - h + 1);
  const int pref = (h * (h - 1) / 2) % 2;
  for (const auto& [t, p] : x.w.terms()) {
    // first part: remove slot alpha of t, differentiate the operator entry
    for (int a = 0; a < h; ++a) {
      WedgeKey tminus;
      for (int sidx = 0; sidx < h; ++sidx)
        if (sidx != a) tminus.push_back(t[sidx]);
      for (const auto& [key, f] : s.w.terms()) {
        WedgeKey rest;
        if (!subset_rest(key, tminus, rest)) continue;
        if (static_cast<int>(rest.size()) != k - h + 1) continue;
        int sign = merge_sign(tminus, rest);
        if (sign == 0) continue;
        DiffPoly d = partial_derivative(f, t[a]);
        if (d.is_zero()) continue;
        int parity = (a + pref) % 2;  // (-1)^{alpha+1}, alpha = a+1
        r.w.add(rest, (parity ? Rat(-sign) : Rat(sign)) * (p * d));
      }
    }
    // second part: differentiate the chain coefficient by a new slot
    for (const auto& [key, f] : s.w.terms()) {
      WedgeKey rest;
      if (!subset_rest(key, t, rest)) continue;
      int sign0 = merge_sign(t, rest);
      if (sign0 == 0) continue;
      for (const DiffVar& v : p.support()) {
        // insert v into rest; repeated slots vanish
        auto pos = std::lower_bound(rest.begin(), rest.end(), v);
        if (pos != rest.end() && *pos == v) continue;
        const int posi = static_cast<int>(pos - rest.begin());
        WedgeKey nk = rest;
        nk.insert(nk.begin() + posi, v);
        DiffPoly d = partial_derivative(p, v);
        // (-1)^{alpha} with alpha = h + posi + 1
        int parity = (h + posi + 1 + pref) % 2;
        r.w.add(nk, (parity ? Rat(-sign0) : Rat(sign0)) * (f * d));
      }
    }
  }
  return r;
}

bool local_op_equal(const LocalOperator& a, const LocalOperator& b) {
  return cochain_equal(local_to_cochain(a), local_to_cochain(b));
}

LocalOperator form_to_local(const DeRhamForm& om) { return {om.w}; }

ConformalCochain local_to_cochain(const LocalOperator& s) {
  return psi_map(DeRhamForm{s.w});
}

DiffOperatorMatrix DiffOperatorMatrix::make(int l) {
  DiffOperatorMatrix h;
  h.l = l;
  h.entries.assign(l, std::vector<std::map<int, DiffPoly>>(l));
  return h;
}

namespace {

// (H*)_{ij} = sum_n (-del)^n o h_{ji;n} in normal form
std::map<int, DiffPoly> adjoint_entry(const DiffOperatorMatrix& h, int i,
                                      int j) {
  std::map<int, DiffPoly> out;
  for (const auto& [n, coeff] : h.entries[j][i]) {
    for (int s = 0; s <= n; ++s) {
      DiffPoly c = rat_binomial(n, s) * total_derivative(coeff, n - s);
      if (n % 2) c = -c;
      if (c.is_zero()) continue;
      auto [it, inserted] = out.emplace(s, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

int matrix_max_dpow(const DiffOperatorMatrix& h) {
  int d = 0;
  for (const auto& row : h.entries)
    for (const auto& e : row)
      for (const auto& [n, c] : e)
        if (!c.is_zero()) d = std::max(d, n);
  return d;
}

int matrix_max_coeff_order(const DiffOperatorMatrix& h) {
  int d = 0;
  for (const auto& row : h.entries)
    for (const auto& e : row)
      for (const auto& [n, c] : e) d = std::max(d, c.max_order());
  return d;
}

}  // namespace

void check_skew_adjoint(const DiffOperatorMatrix& h) {
  for (int i = 0; i < h.l; ++i) {
    for (int j = 0; j < h.l; ++j) {
      std::map<int, DiffPoly> adj = adjoint_entry(h, i, j);
      std::map<int, DiffPoly> neg;
      for (const auto& [n, c] : h.entries[i][j])
        if (!c.is_zero()) neg.emplace(n, -c);
      if (adj != neg) {
        std::ostringstream os;
        os << "(H*)_" << (i + 1) << (j + 1) << " != -H_" << (i + 1)
           << (j + 1);
        throw SkewAdjointViolation(i + 1, j + 1, os.str());
      }
    }
  }
}

ConformalCtxPtr variational_context(int l) {
  return make_conformal_context(LCAPresentation::zero(l),
                                ModuleSpec::free_standard());
}

BivectorResult bivector_from_operator(const DiffOperatorMatrix& h,
                                      int trust) {
  check_skew_adjoint(h);
  BivectorResult out;
  out.chain = TruncatedChain(2, trust);
  for (int i = 0; i < h.l; ++i) {
    for (int j = 0; j < h.l; ++j) {
      ChainGauge g;
      g.gens = {i, j};
      for (const auto& [n, c] : h.entries[j][i]) {
        if (c.is_zero()) continue;
        g.psi[{n}] = rat(1, 2) * c;
      }
      if (g.psi.empty()) continue;
      out.chain = out.chain + chain_expand(g, trust);
      out.gauges.push_back(std::move(g));
    }
  }
  return out;
}

int poisson_min_order(const DiffOperatorMatrix& h) {
  return matrix_max_dpow(h) + matrix_max_coeff_order(h) + 2;
}

namespace {

PoissonVerdict obstruction_verdict(const TruncatedChain& obstruction) {
  PoissonVerdict v;
  v.obstruction = obstruction;
  v.obstruction_trust = obstruction.trust();
  v.poisson = obstruction.zero_within_trust();
  if (!v.poisson) {
    for (const auto& [g, s] : obstruction.parts()) {
      for (const auto& [e, c] : s.coeffs) {
        int tot = 0;
        for (int x : e) tot += x;
        if (tot > obstruction.trust() || c.is_zero()) continue;
        std::ostringstream os;
        os << "gens(";
        for (size_t t = 0; t < g.size(); ++t)
          os << (t ? "," : "") << "u" << (g[t] + 1);
        os << ") mindex(";
        for (size_t t = 0; t < e.size(); ++t) os << (t ? "," : "") << e[t];
        os << ") = " << c.str();
        v.first_nonzero = os.str();
        return v;
      }
    }
  }
  return v;
}

}  // namespace

PoissonVerdict check_poisson(const DiffOperatorMatrix& h, int order) {
  const int min_order = poisson_min_order(h);
  if (order < min_order)
    throw InsufficientOrder(min_order, order, "check_poisson");
  auto ctx = variational_context(h.l);
  const int o = matrix_max_coeff_order(h);
  for (int input_trust = 2 * order + o + 4;; input_trust += 4) {
    BivectorResult b = bivector_from_operator(h, input_trust);
    if (bracket_output_trust(b.chain, b.chain, *ctx) < order) continue;
    TruncatedChain obstruction = chain_bracket(b.chain, b.chain, *ctx);
    return obstruction_verdict(obstruction);
  }
}

PoissonVerdict check_compatible(const DiffOperatorMatrix& h1,
                                const DiffOperatorMatrix& h2, int order) {
  const int min_order =
      std::max(poisson_min_order(h1), poisson_min_order(h2));
  if (order < min_order)
    throw InsufficientOrder(min_order, order, "check_compatible");
  if (h1.l != h2.l) throw InputError("operator sizes differ");
  auto ctx = variational_context(h1.l);
  const int o =
      std::max(matrix_max_coeff_order(h1), matrix_max_coeff_order(h2));
  for (int input_trust = 2 * order + o + 4;; input_trust += 4) {
    BivectorResult b1 = bivector_from_operator(h1, input_trust);
    BivectorResult b2 = bivector_from_operator(h2, input_trust);
    if (bracket_output_trust(b1.chain, b2.chain, *ctx) < order) continue;
    TruncatedChain obstruction = chain_bracket(b1.chain, b2.chain, *ctx);
    return obstruction_verdict(obstruction);
  }
}

std::optional<std::vector<EvVectorField>> nondegeneracy_witness(
    const LocalOperator& s, int num_gens) {
  const int k = s.degree();
  const int max_ord = s.w.max_order() + 1;
  // monomial characteristics of V-degree <= 2
  std::vector<DiffPoly> probes{DiffPoly(Rat(1))};
  std::vector<DiffPoly> singles;
  for (int g = 0; g < num_gens; ++g)
    for (int n = 0; n <= max_ord; ++n)
      singles.push_back(DiffPoly::var(g, n));
  probes.insert(probes.end(), singles.begin(), singles.end());
  for (size_t a = 0; a < singles.size(); ++a)
    for (size_t b = a; b < singles.size(); ++b)
      probes.push_back(singles[a] * singles[b]);

  if (k == 0) {
    DiffPoly val;
    for (const auto& [key, f] : s.w.terms()) val += f;
    if (!is_total_derivative(val).exact) return std::vector<EvVectorField>{};
    return std::nullopt;
  }

  std::vector<EvVectorField> fields;
  for (const DiffPoly& p : probes)
    for (int g = 0; g < num_gens; ++g) {
      EvVectorField f;
      f.chars.assign(num_gens, DiffPoly());
      f.chars[g] = p;
      fields.push_back(std::move(f));
    }

  std::vector<int> idx(k);
  std::function<std::optional<std::vector<EvVectorField>>(int, int)> rec =
      [&](int slot, int start) -> std::optional<std::vector<EvVectorField>> {
    if (slot == k) {
      std::vector<EvVectorField> wedge;
      for (int t = 0; t < k; ++t) wedge.push_back(fields[idx[t]]);
      DiffPoly val = eval_local(s, wedge);
      if (!is_total_derivative(val).exact) return wedge;
      return std::nullopt;
    }
    for (int i = start; i < static_cast<int>(fields.size()); ++i) {
      idx[slot] = i;
      if (auto r = rec(slot + 1, i + 1)) return r;
    }
    return std::nullopt;
  };
  return rec(0, 0);
}

}  // namespace gcalc
