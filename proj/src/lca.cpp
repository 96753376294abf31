#include "gcalc/lca.hpp"

#include <sstream>

namespace gcalc {

const std::vector<LCATerm> LCAPresentation::kEmpty;

LCAPresentation::LCAPresentation(
    std::vector<std::string> generators,
    std::map<std::pair<int, int>, std::vector<LCATerm>> table,
    std::vector<std::string> torsion_relations)
    : names_(std::move(generators)), table_(std::move(table)) {
  if (!torsion_relations.empty()) throw TorsionUnsupported();
  const int r = rank();
  for (const auto& [ij, terms] : table_) {
    auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= r || j >= r)
      throw InputError("bracket table index out of range");
    for (const auto& t : terms) {
      if (t.k < 0 || t.k >= r)
        throw InputError("bracket table target out of range");
      if (t.p < 0 || t.q < 0)
        throw InputError("lambda/del powers must be nonnegative");
    }
  }
}

const std::vector<LCATerm>& LCAPresentation::bracket(int i, int j) const {
  auto it = table_.find({i, j});
  return it == table_.end() ? kEmpty : it->second;
}

bool LCAPresentation::zero_bracket() const {
  for (const auto& [ij, terms] : table_)
    for (const auto& t : terms)
      if (!is_zero(t.c)) return false;
  return true;
}

int LCAPresentation::max_lambda_plus_del_degree() const {
  int d = 0;
  for (const auto& [ij, terms] : table_)
    for (const auto& t : terms)
      if (!is_zero(t.c)) d = std::max(d, t.p + t.q);
  return d;
}

LCAPresentation LCAPresentation::zero(int rank) {
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) names.push_back("u" + std::to_string(i + 1));
  return LCAPresentation(std::move(names), {});
}

LCAPresentation LCAPresentation::virasoro_nocenter() {
  return LCAPresentation(
      {"L"}, {{{0, 0}, {{Rat(1), 0, 1, 0}, {Rat(2), 1, 0, 0}}}});
}

LCAPresentation LCAPresentation::current_sl2() {
  // generators (h, e, f); [a la b] = [a, b], no lambda or del terms
  std::map<std::pair<int, int>, std::vector<LCATerm>> t;
  auto put = [&](int i, int j, int k, long c) {
    t[{i, j}].push_back({Rat(c), 0, 0, k});
    t[{j, i}].push_back({Rat(-c), 0, 0, k});
  };
  put(0, 1, 1, 2);   // [h, e] = 2e
  put(0, 2, 2, -2);  // [h, f] = -2f
  put(1, 2, 0, 1);   // [e, f] = h
  return LCAPresentation({"h", "e", "f"}, std::move(t));
}

void LCAElement::add(int k, const UniPoly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = comps_.emplace(k, p);
  if (!inserted) {
    it->second = it->second + p;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

LCAElement operator+(const LCAElement& a, const LCAElement& b) {
  LCAElement r = a;
  for (const auto& [k, p] : b.comps_) r.add(k, p);
  return r;
}

LCAElement LCAElement::operator-() const {
  LCAElement r;
  for (const auto& [k, p] : comps_) r.comps_[k] = -p;
  return r;
}

LCAElement operator*(const UniPoly& p, const LCAElement& a) {
  LCAElement r;
  for (const auto& [k, q] : a.comps_) r.add(k, p * q);
  return r;
}

std::string LCAElement::str(const LCAPresentation& r) const {
  if (comps_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, p] : comps_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << p.str() << ")*" << r.name(k);
  }
  return os.str();
}

namespace {

void lambda_add(LambdaLCA& acc, int pow, int k, const UniPoly& p) {
  if (p.is_zero()) return;
  auto& e = acc[pow];
  e.add(k, p);
  if (e.is_zero()) acc.erase(pow);
}

void lm_add(LambdaMuLCA& acc, int pl, int pm, const LCAElement& e) {
  if (e.is_zero()) return;
  auto [it, inserted] = acc.emplace(std::make_pair(pl, pm), e);
  if (!inserted) {
    it->second = it->second + e;
    if (it->second.is_zero()) acc.erase(it);
  }
}

}  // namespace

LambdaLCA lambda_bracket(const LCAPresentation& r, const LCAElement& x,
                         const LCAElement& y) {
  LambdaLCA out;
  for (const auto& [i, P] : x.comps()) {
    for (const auto& [j, Q] : y.comps()) {
      for (const auto& t : r.bracket(i, j)) {
        // Q(del + la) applied to c la^p del^q a_k
        LambdaLCA mid;
        for (int s = 0; s <= Q.degree(); ++s) {
          Rat qs = Q.coeff(s);
          if (is_zero(qs)) continue;
          for (int u = 0; u <= s; ++u)
            lambda_add(mid, t.p + u, t.k,
                       UniPoly::monomial(s - u + t.q,
                                         t.c * qs * rat_binomial(s, u)));
        }
        // multiply by P(-la)
        for (int v = 0; v <= P.degree(); ++v) {
          Rat pv = P.coeff(v);
          if (is_zero(pv)) continue;
          if (v % 2) pv = -pv;
          for (const auto& [pow, elem] : mid)
            for (const auto& [k, up] : elem.comps())
              lambda_add(out, pow + v, k, pv * up);
        }
      }
    }
  }
  return out;
}

LCAElement jth_product(const LCAPresentation& r, const LCAElement& a,
                       const LCAElement& b, int j) {
  LambdaLCA br = lambda_bracket(r, a, b);
  auto it = br.find(j);
  if (it == br.end()) return {};
  return UniPoly(rat_factorial(j)) * it->second;
}

std::map<std::pair<int, int>, Rat> ann_bracket(const LCAPresentation& r,
                                               int a, int m, int b, int n) {
  std::map<std::pair<int, int>, Rat> out;
  auto put = [&](int gen, int idx, const Rat& c) {
    if (is_zero(c) || idx < 0) return;
    auto [it, inserted] = out.emplace(std::make_pair(gen, idx), c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) out.erase(it);
    }
  };
  LambdaLCA br = lambda_bracket(r, LCAElement::generator(a),
                                LCAElement::generator(b));
  for (const auto& [j, elem] : br) {
    if (j > m) continue;
    // a_(j) b = j! * elem; (del^q c)_s = (-1)^q s!/(s-q)! c_{s-q}
    Rat cmj = rat_binomial(m, j) * rat_factorial(j);
    int s = m + n - j;
    for (const auto& [k, P] : elem.comps()) {
      for (int q = 0; q <= P.degree(); ++q) {
        Rat pq = P.coeff(q);
        if (is_zero(pq) || s - q < 0) continue;
        Rat fall(1);
        for (int t = 0; t < q; ++t) fall *= Rat(-(s - t));
        put(k, s - q, cmj * pq * fall);
      }
    }
  }
  return out;
}

namespace {

// Terms of [a_j la a_i] with la replaced by (-la - del), del to the left.
LambdaLCA substituted_opposite(const LCAPresentation& r, int i, int j) {
  LambdaLCA out;
  for (const auto& t : r.bracket(j, i)) {
    // c (-la - del)^p del^q a_k = sum_u C(p,u) (-1)^p c la^u del^{p-u+q} a_k
    for (int u = 0; u <= t.p; ++u) {
      Rat c = t.c * rat_binomial(t.p, u);
      if (t.p % 2) c = -c;
      lambda_add(out, u, t.k, UniPoly::monomial(t.p - u + t.q, c));
    }
  }
  return out;
}

LambdaLCA table_bracket(const LCAPresentation& r, int i, int j) {
  return lambda_bracket(r, LCAElement::generator(i),
                        LCAElement::generator(j));
}

std::string lambda_lca_str(const LCAPresentation& r, const LambdaLCA& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [pow, e] : p) {
    if (!first) os << " + ";
    first = false;
    os << "la^" << pow << "*(" << e.str(r) << ")";
  }
  return os.str();
}

}  // namespace

Report check_lca_axioms(const LCAPresentation& r) {
  Report rep;
  const int n = r.rank();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      LambdaLCA lhs = table_bracket(r, i, j);
      LambdaLCA neg_rhs = substituted_opposite(r, i, j);
      LambdaLCA sum = lhs;
      for (const auto& [pow, e] : neg_rhs)
        for (const auto& [k, p] : e.comps()) lambda_add(sum, pow, k, p);
      std::string id = "[" + r.name(i) + "," + r.name(j) + "]";
      rep.record("skewcommutativity", id, sum.empty(),
                 sum.empty() ? ""
                             : "[a la b] + [b (-la-del) a] = " +
                                   lambda_lca_str(r, sum));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        LambdaMuLCA jac;
        // [a_i la [a_j mu a_k]]
        for (const auto& [pm, e] : table_bracket(r, j, k)) {
          LambdaLCA outer = lambda_bracket(r, LCAElement::generator(i), e);
          for (const auto& [pl, f] : outer) lm_add(jac, pl, pm, f);
        }
        // - [a_j mu [a_i la a_k]]
        for (const auto& [pl, e] : table_bracket(r, i, k)) {
          LambdaLCA outer = lambda_bracket(r, LCAElement::generator(j), e);
          for (const auto& [pm, f] : outer) lm_add(jac, pl, pm, -f);
        }
        // - [[a_i la a_j]_{la+mu} a_k]
        for (const auto& [pl, e] : table_bracket(r, i, j)) {
          for (const auto& [g, P] : e.comps()) {
            for (const auto& t : r.bracket(g, k)) {
              // P(-nu) c nu^p del^q a_k with nu = la + mu
              for (int s = 0; s <= P.degree(); ++s) {
                Rat ps = P.coeff(s);
                if (is_zero(ps)) continue;
                if (s % 2) ps = -ps;
                int nu_pow = s + t.p;
                for (int u = 0; u <= nu_pow; ++u) {
                  LCAElement x;
                  x.add(t.k, UniPoly::monomial(
                                 t.q, -ps * t.c * rat_binomial(nu_pow, u)));
                  lm_add(jac, pl + u, nu_pow - u, x);
                }
              }
            }
          }
        }
        std::string id =
            "(" + r.name(i) + "," + r.name(j) + "," + r.name(k) + ")";
        bool pass = jac.empty();
        rep.record("jacobi", id, pass, pass ? "" : "nonzero Jacobiator");
      }
    }
  }
  return rep;
}

ModuleSpec ModuleSpec::zero_action() { return ModuleSpec(); }

ModuleSpec ModuleSpec::free_standard() {
  ModuleSpec s;
  s.kind_ = Kind::FreeStandard;
  return s;
}

ModuleSpec ModuleSpec::custom(
    std::vector<std::map<int, std::vector<DiffPoly>>> images) {
  ModuleSpec s;
  s.kind_ = Kind::Custom;
  s.images_ = std::move(images);
  return s;
}

DiffPoly ModuleSpec::act_var(int gen, int s, int j, int n) const {
  if (s < 0) return {};
  if (n == 0) {
    if (gen < 0 || gen >= static_cast<int>(images_.size())) return {};
    auto it = images_[gen].find(s);
    if (it == images_[gen].end()) return {};
    if (j >= static_cast<int>(it->second.size())) return {};
    return it->second[j];
  }
  // D_s del = del D_s + D_{s-1}
  return total_derivative(act_var(gen, s, j, n - 1)) +
         act_var(gen, s - 1, j, n - 1);
}

DiffPoly ModuleSpec::act(int gen, int s, const DiffPoly& f) const {
  if (s < 0) return {};
  switch (kind_) {
    case Kind::Zero:
      return {};
    case Kind::FreeStandard:
      return partial_derivative(f, gen, s);
    case Kind::Custom: {
      DiffPoly out;
      for (const DiffVar& v : f.support())
        out += act_var(gen, s, v.gen, v.ord) * partial_derivative(f, v);
      return out;
    }
  }
  return {};
}

int ModuleSpec::action_degree_bound(const DiffPoly& f) const {
  switch (kind_) {
    case Kind::Zero:
      return -1;
    case Kind::FreeStandard:
      return f.max_order();
    case Kind::Custom: {
      int smax = -1;
      for (const auto& m : images_)
        for (const auto& [s, v] : m) smax = std::max(smax, s);
      return smax < 0 ? -1 : smax + std::max(f.max_order(), 0);
    }
  }
  return -1;
}

namespace {

using LMPoly = std::map<std::pair<int, int>, DiffPoly>;

void lmp_add(LMPoly& acc, int a, int b, const DiffPoly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = acc.emplace(std::make_pair(a, b), p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) acc.erase(it);
  }
}

}  // namespace

Report check_module_axioms(const LCAPresentation& r, const ModuleSpec& spec,
                           const std::vector<DiffPoly>& samples) {
  Report rep;
  for (size_t si = 0; si < samples.size(); ++si) {
    const DiffPoly& m = samples[si];
    const std::string sid = "m" + std::to_string(si);
    // (i): a_la(del m) = (del + la)(a_la m), coefficientwise in la.
    for (int a = 0; a < r.rank(); ++a) {
      DiffPoly dm = total_derivative(m);
      bool ok = true;
      int bound = std::max(spec.action_degree_bound(dm),
                           spec.action_degree_bound(m) + 1);
      for (int s = 0; s <= bound && ok; ++s) {
        DiffPoly lhs = spec.act(a, s, dm);
        DiffPoly rhs =
            total_derivative(spec.act(a, s, m)) + spec.act(a, s - 1, m);
        ok = (lhs == rhs);
      }
      rep.record("sesquilinearity-action", r.name(a) + "," + sid, ok);
    }
    // (ii): a_la(b_mu m) - b_mu(a_la m) = [a la b]_{la+mu} m.
    for (int a = 0; a < r.rank(); ++a) {
      for (int b = 0; b < r.rank(); ++b) {
        LMPoly resid;
        int bm = spec.action_degree_bound(m);
        for (int t = 0; t <= bm; ++t) {
          DiffPoly bt = spec.act(b, t, m);
          for (int s = 0; s <= spec.action_degree_bound(bt); ++s)
            lmp_add(resid, s, t, spec.act(a, s, bt));
        }
        for (int s = 0; s <= bm; ++s) {
          DiffPoly as = spec.act(a, s, m);
          for (int t = 0; t <= spec.action_degree_bound(as); ++t)
            lmp_add(resid, s, t, -spec.act(b, t, as));
        }
        for (const auto& term : r.bracket(a, b)) {
          // subtract c la^p (-la-mu)^q (a_k)_{la+mu} m
          for (int rr = 0; rr <= spec.action_degree_bound(m); ++rr) {
            DiffPoly dm = spec.act(term.k, rr, m);
            if (dm.is_zero()) continue;
            int nu_pow = term.q + rr;
            Rat base = term.c;
            if (term.q % 2) base = -base;
            for (int u = 0; u <= nu_pow; ++u)
              lmp_add(resid, term.p + u, nu_pow - u,
                      Rat(-1) * base * rat_binomial(nu_pow, u) * dm);
          }
        }
        bool pass = resid.empty();
        rep.record("module-jacobi", r.name(a) + "," + r.name(b) + "," + sid,
                   pass, pass ? "" : "identity (ii) fails");
      }
    }
  }
  return rep;
}

}  // namespace gcalc
