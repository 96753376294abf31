#include "gcalc/lie.hpp"

#include <algorithm>
#include <sstream>

#include "gcalc/schouten.hpp"

namespace gcalc {

namespace {

// Sorts tuple in place, returns the permutation sign; 0 on repeats.
int sort_sign(std::vector<int>& t) {
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

FinLieAlgebra::FinLieAlgebra(
    int dim, std::vector<std::string> names,
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rat>>> brackets)
    : dim_(dim), names_(std::move(names)), table_(std::move(brackets)) {
  if (static_cast<int>(names_.size()) != dim)
    throw InputError("basis name count does not match dim");
  for (const auto& [ij, terms] : table_) {
    auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= dim || j >= dim || i >= j)
      throw InputError("bracket table entries must have 0 <= i < j < dim");
    for (const auto& [k, c] : terms)
      if (k < 0 || k >= dim) throw InputError("bracket target out of range");
  }
  // Jacobi: [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0.
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        std::vector<Rat> acc(dim, Rat(0));
        auto add2 = [&](int a, int b, int c) {
          for (const auto& [t, ct] : bracket(a, b))
            for (const auto& [s, cs] : bracket(t, c)) acc[s] += ct * cs;
        };
        add2(i, j, k);
        add2(j, k, i);
        add2(k, i, j);
        for (const Rat& r : acc)
          if (!is_zero(r))
            throw InputError(
                "structure constants violate the Jacobi identity");
      }
}

std::vector<std::pair<int, Rat>> FinLieAlgebra::bracket(int i, int j) const {
  if (i == j) return {};
  if (i < j) {
    auto it = table_.find({i, j});
    return it == table_.end() ? std::vector<std::pair<int, Rat>>{}
                              : it->second;
  }
  auto r = bracket(j, i);
  for (auto& [k, c] : r) c = -c;
  return r;
}

FinLieAlgebra FinLieAlgebra::r2() {
  return FinLieAlgebra(2, {"e1", "e2"}, {{{0, 1}, {{1, Rat(1)}}}});
}

FinLieAlgebra FinLieAlgebra::sl2() {
  return FinLieAlgebra(3, {"h", "e", "f"},
                       {{{0, 1}, {{1, Rat(2)}}},
                        {{0, 2}, {{2, Rat(-2)}}},
                        {{1, 2}, {{0, Rat(1)}}}});
}

FinLieAlgebra FinLieAlgebra::abelian(int dim) {
  std::vector<std::string> names;
  for (int i = 0; i < dim; ++i) names.push_back("e" + std::to_string(i + 1));
  return FinLieAlgebra(dim, std::move(names), {});
}

GActionAlgebra::GActionAlgebra(const FinLieAlgebra& g, int nvars,
                               std::vector<std::vector<APoly>> images)
    : nvars_(nvars), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != g.dim())
    throw InputError("need one derivation per basis element");
  for (const auto& row : images_)
    if (static_cast<int>(row.size()) != nvars)
      throw InputError("derivation image count does not match variables");
  // [rho(e_i), rho(e_j)] = rho([e_i, e_j]) on the generators z.
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j)
      for (int v = 0; v < nvars; ++v) {
        APoly lhs = act(i, images_[j][v]) - act(j, images_[i][v]);
        APoly rhs;
        for (const auto& [k, c] : g.bracket(i, j)) rhs += c * images_[k][v];
        if (!(lhs == rhs))
          throw InputError("action is not a Lie algebra homomorphism");
      }
}

GActionAlgebra GActionAlgebra::trivial(const FinLieAlgebra& g) {
  return GActionAlgebra(g, 0, std::vector<std::vector<APoly>>(g.dim()));
}

bool GActionAlgebra::is_trivial() const {
  for (const auto& row : images_)
    for (const auto& p : row)
      if (!p.is_zero()) return false;
  return true;
}

APoly GActionAlgebra::act(int i, const APoly& f) const {
  APoly r;
  for (int v = 0; v < nvars_; ++v)
    r += images_[i][v] * partial_derivative(f, v, 0);
  return r;
}

LieCtxPtr make_lie_context(FinLieAlgebra g, GActionAlgebra A) {
  return std::make_shared<const LieContext>(
      LieContext{std::move(g), std::move(A)});
}

void LieChain::add_term(const std::vector<int>& tuple, const APoly& coeff) {
  if (coeff.is_zero()) return;
  std::vector<int> t = tuple;
  int sign = sort_sign(t);
  if (sign == 0) return;
  auto [it, inserted] = terms_.emplace(std::move(t), Rat(sign) * coeff);
  if (!inserted) {
    it->second += Rat(sign) * coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool operator==(const LieChain& a, const LieChain& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.deg_ == b.deg_ && a.terms_ == b.terms_;
}

LieChain LieChain::operator-() const {
  LieChain r(ctx_, deg_);
  for (const auto& [t, c] : terms_) r.terms_[t] = -c;
  return r;
}

LieChain LieChain::operator+(const LieChain& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (deg_ != o.deg_) throw DegreeMismatch("chain sum of unequal degrees");
  LieChain r = *this;
  for (const auto& [t, c] : o.terms_) r.add_term(t, c);
  return r;
}

void LieCochain::set_value(const std::vector<int>& tuple, const APoly& value) {
  std::vector<int> t = tuple;
  int sign = sort_sign(t);
  if (sign == 0) return;
  if (value.is_zero())
    vals_.erase(t);
  else
    vals_[t] = Rat(sign) * value;
}

void LieCochain::add_value(const std::vector<int>& tuple, const APoly& value) {
  if (value.is_zero()) return;
  std::vector<int> t = tuple;
  int sign = sort_sign(t);
  if (sign == 0) return;
  auto [it, inserted] = vals_.emplace(std::move(t), Rat(sign) * value);
  if (!inserted) {
    it->second += Rat(sign) * value;
    if (it->second.is_zero()) vals_.erase(it);
  }
}

APoly LieCochain::eval(std::vector<int> tuple) const {
  int sign = sort_sign(tuple);
  if (sign == 0) return {};
  auto it = vals_.find(tuple);
  if (it == vals_.end()) return {};
  return Rat(sign) * it->second;
}

bool operator==(const LieCochain& a, const LieCochain& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.deg_ == b.deg_ && a.vals_ == b.vals_;
}

LieCochain LieCochain::operator-() const {
  LieCochain r(ctx_, deg_);
  for (const auto& [t, c] : vals_) r.vals_[t] = -c;
  return r;
}

LieCochain LieCochain::operator+(const LieCochain& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (deg_ != o.deg_) throw DegreeMismatch("cochain sum of unequal degrees");
  LieCochain r = *this;
  for (const auto& [t, c] : o.vals_) r.add_value(t, c);
  return r;
}

std::vector<std::vector<int>> increasing_tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  if (k == 0) return {std::vector<int>{}};
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (int i = pos + 1; i < k; ++i) cur[i] = cur[i - 1] + 1;
  }
  return out;
}

LieCochain cochain_d(const LieCochain& om) {
  const auto& ctx = *om.ctx();
  const int k = om.degree();
  LieCochain out(om.ctx(), k + 1);
  for (const auto& tuple : increasing_tuples(ctx.g.dim(), k + 1)) {
    APoly val;
    for (int i = 0; i < k + 1; ++i) {
      std::vector<int> rest;
      for (int t = 0; t < k + 1; ++t)
        if (t != i) rest.push_back(tuple[t]);
      APoly term = ctx.A.act(tuple[i], om.eval(rest));
      val += (i % 2 == 0) ? term : -term;  // (-1)^{i+1}, 1-based i
      for (int j = i + 1; j < k + 1; ++j) {
        std::vector<int> args;
        args.reserve(k);
        args.push_back(-1);  // slot for the bracket target, put in front
        for (int t = 0; t < k + 1; ++t)
          if (t != i && t != j) args.push_back(tuple[t]);
        APoly sum;
        for (const auto& [b, c] : ctx.g.bracket(tuple[i], tuple[j])) {
          args[0] = b;
          sum += c * om.eval(args);
        }
        val += ((i + j) % 2 == 0) ? sum : -sum;  // (-1)^{i+j}, 1-based
      }
    }
    out.set_value(tuple, val);
  }
  return out;
}

LieCochain contract(const LieChain& x, const LieCochain& om) {
  const int h = x.degree(), k = om.degree();
  if (h > k) return LieCochain(om.ctx(), 0);
  const auto& ctx = *om.ctx();
  LieCochain out(om.ctx(), k - h);
  const int pref = (h * (h - 1) / 2) % 2;
  for (const auto& ytuple : increasing_tuples(ctx.g.dim(), k - h)) {
    APoly val;
    for (const auto& [t, a] : x.terms()) {
      std::vector<int> args = t;
      args.insert(args.end(), ytuple.begin(), ytuple.end());
      val += a * om.eval(args);
    }
    out.set_value(ytuple, pref ? -val : val);
  }
  return out;
}

LieCochain lie_derive(const LieChain& x, const LieCochain& om) {
  const int h = x.degree(), k = om.degree();
  if (h > k + 1) return LieCochain(om.ctx(), 0);
  const auto& ctx = *om.ctx();
  LieCochain out(om.ctx(), k - h + 1);
  const int pref = (h * (h - 1) / 2) % 2;
  for (const auto& ytuple : increasing_tuples(ctx.g.dim(), k - h + 1)) {
    APoly val;
    for (const auto& [t, a] : x.terms()) {
      // args[0..h) from the chain term, args[h..k+1) evaluation slots.
      std::vector<int> args = t;
      args.insert(args.end(), ytuple.begin(), ytuple.end());
      auto omit = [&](int i) {
        std::vector<int> rest;
        for (int s = 0; s < k + 1; ++s)
          if (s != i) rest.push_back(args[s]);
        return rest;
      };
      // (-1)^i X_i(a) om(args \ i) over evaluation slots, 1-based i
      for (int i = h; i < k + 1; ++i) {
        APoly term = ctx.A.act(args[i], a) * om.eval(omit(i));
        val += (i % 2 == 0) ? -term : term;
      }
      // -(-1)^i a X_i(om(args \ i)) over chain slots
      for (int i = 0; i < h; ++i) {
        APoly term = a * ctx.A.act(args[i], om.eval(omit(i)));
        val += (i % 2 == 0) ? term : -term;
      }
      // (-1)^i a om(slot i removed, slot j -> [X_i, X_j])
      for (int i = 0; i < h; ++i) {
        for (int j = i + 1; j < k + 1; ++j) {
          std::vector<int> rest;
          int bracket_pos = -1;
          for (int s = 0; s < k + 1; ++s) {
            if (s == i) continue;
            if (s == j) bracket_pos = static_cast<int>(rest.size());
            rest.push_back(args[s]);
          }
          APoly sum;
          for (const auto& [b, c] : ctx.g.bracket(args[i], args[j])) {
            rest[bracket_pos] = b;
            sum += c * om.eval(rest);
          }
          val += (i % 2 == 0) ? -(a * sum) : a * sum;
        }
      }
    }
    out.set_value(ytuple, pref ? -val : val);
  }
  return out;
}

LieChain chain_wedge(const LieChain& x, const LieChain& y) {
  if (x.ctx() && y.ctx() && x.ctx() != y.ctx()) throw MixedAlgebroid();
  LieChain out(x.ctx() ? x.ctx() : y.ctx(), x.degree() + y.degree());
  for (const auto& [tx, cx] : x.terms())
    for (const auto& [ty, cy] : y.terms()) {
      std::vector<int> t = tx;
      t.insert(t.end(), ty.begin(), ty.end());
      out.add_term(t, cx * cy);
    }
  return out;
}

namespace {

// Algebroid element f (x) e_i for the generic Schouten expansion.
using AV = std::pair<APoly, int>;

AlgebroidOps<APoly, AV> algebroid_ops(const LieCtxPtr& ctx) {
  AlgebroidOps<APoly, AV> ops;
  ops.bracket = [ctx](const AV& x, const AV& y) {
    std::vector<AV> out;
    const auto& [f, i] = x;
    const auto& [g, j] = y;
    for (const auto& [k, c] : ctx->g.bracket(i, j))
      out.push_back({c * (f * g), k});
    APoly a = f * ctx->A.act(i, g);
    if (!a.is_zero()) out.push_back({std::move(a), j});
    APoly b = -(g * ctx->A.act(j, f));
    if (!b.is_zero()) out.push_back({std::move(b), i});
    return out;
  };
  ops.act = [ctx](const AV& x, const APoly& f) {
    return x.first * ctx->A.act(x.second, f);
  };
  ops.scale = [](const APoly& f, const AV& x) {
    return AV{f * x.first, x.second};
  };
  ops.mul = [](const APoly& a, const APoly& b) { return a * b; };
  ops.neg = [](const APoly& a) { return -a; };
  ops.is_zero = [](const APoly& a) { return a.is_zero(); };
  return ops;
}

}  // namespace

LieChain chain_bracket(const LieChain& x, const LieChain& y) {
  if (x.ctx() && y.ctx() && x.ctx() != y.ctx()) throw MixedAlgebroid();
  LieCtxPtr ctx = x.ctx() ? x.ctx() : y.ctx();
  int odeg = x.degree() + y.degree() - 1;
  LieChain out(ctx, std::max(odeg, 0));
  if (x.is_zero() || y.is_zero()) return out;
  auto ops = algebroid_ops(ctx);
  const APoly unit(Rat(1));
  for (const auto& [tx, cx] : x.terms()) {
    for (const auto& [ty, cy] : y.terms()) {
      WedgeTerm<APoly, AV> wx{cx, {}}, wy{cy, {}};
      for (int i : tx) wx.factors.push_back({unit, i});
      for (int i : ty) wy.factors.push_back({unit, i});
      for (const auto& term : schouten_bracket(ops, wx, wy, unit)) {
        APoly coeff = term.coeff;
        std::vector<int> tuple;
        for (const auto& [f, i] : term.factors) {
          coeff = coeff * f;
          tuple.push_back(i);
        }
        out.add_term(tuple, coeff);
      }
    }
  }
  return out;
}

Calculus<LieChain, LieCochain> build_lie_calculus(const LieCtxPtr& ctx) {
  Calculus<LieChain, LieCochain> c;
  c.gv.add = [](const LieChain& a, const LieChain& b) { return a + b; };
  c.gv.neg = [](const LieChain& a) { return -a; };
  c.gv.scale = [](const Rat& r, const LieChain& a) {
    LieChain out(a.ctx(), a.degree());
    for (const auto& [t, co] : a.terms()) out.add_term(t, r * co);
    return out;
  };
  c.gv.eq = [](const LieChain& a, const LieChain& b) { return a == b; };
  c.gv.is_zero = [](const LieChain& a) { return a.is_zero(); };
  c.gv.degree = [](const LieChain& a) { return a.degree(); };
  c.gv.show = [](const LieChain& a) { return a.str(); };
  c.ov.add = [](const LieCochain& a, const LieCochain& b) { return a + b; };
  c.ov.neg = [](const LieCochain& a) { return -a; };
  c.ov.scale = [](const Rat& r, const LieCochain& a) {
    LieCochain out(a.ctx(), a.degree());
    for (const auto& [t, v] : a.values()) out.add_value(t, r * v);
    return out;
  };
  c.ov.eq = [](const LieCochain& a, const LieCochain& b) { return a == b; };
  c.ov.is_zero = [](const LieCochain& a) { return a.is_zero(); };
  c.ov.degree = [](const LieCochain& a) { return a.degree(); };
  c.ov.show = [](const LieCochain& a) { return a.str(); };
  c.wedge = chain_wedge;
  c.bracket = chain_bracket;
  c.d = [](const LieCochain& om) { return cochain_d(om); };
  c.contract = [](const LieChain& x, const LieCochain& om) {
    return contract(x, om);
  };
  c.lie = [](const LieChain& x, const LieCochain& om) {
    return lie_derive(x, om);
  };
  return c;
}

namespace {

std::vector<APoly> monomial_basis(int nvars, int max_deg) {
  std::vector<APoly> out{APoly(Rat(1))};
  if (nvars == 0) return out;
  std::vector<Monomial> level{{}};
  for (int d = 1; d <= max_deg; ++d) {
    std::vector<Monomial> next;
    for (const auto& m : level)
      for (int v = (m.empty() ? 0 : m.back().first.gen); v < nvars; ++v) {
        Monomial mm = m;
        if (!mm.empty() && mm.back().first.gen == v)
          mm.back().second++;
        else
          mm.push_back({DiffVar{v, 0}, 1});
        next.push_back(mm);
      }
    for (const auto& m : next) {
      APoly p;
      p.add_term(m, Rat(1));
      out.push_back(p);
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<LieChain> basis_chains(const LieCtxPtr& ctx, int max_degree,
                                   int acoeff_deg) {
  std::vector<LieChain> out;
  auto monos = monomial_basis(ctx->A.nvars(), acoeff_deg);
  for (int h = 0; h <= max_degree; ++h)
    for (const auto& t : increasing_tuples(ctx->g.dim(), h))
      for (const auto& a : monos) {
        LieChain x(ctx, h);
        x.add_term(t, a);
        out.push_back(std::move(x));
      }
  return out;
}

std::vector<LieCochain> basis_cochains(const LieCtxPtr& ctx, int max_degree,
                                       int acoeff_deg) {
  std::vector<LieCochain> out;
  auto monos = monomial_basis(ctx->A.nvars(), acoeff_deg);
  for (int k = 0; k <= max_degree; ++k)
    for (const auto& t : increasing_tuples(ctx->g.dim(), k))
      for (const auto& a : monos) {
        LieCochain om(ctx, k);
        om.set_value(t, a);
        out.push_back(std::move(om));
      }
  return out;
}

std::string LieChain::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (t.empty()) continue;
    os << "*";
    for (size_t i = 0; i < t.size(); ++i)
      os << (i ? "^" : "") << ctx_->g.name(t[i]);
  }
  return os.str();
}

std::string LieCochain::str() const {
  if (vals_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : vals_) {
    if (!first) os << ", ";
    first = false;
    os << "(";
    for (size_t i = 0; i < t.size(); ++i)
      os << (i ? "^" : "") << ctx_->g.name(t[i]);
    os << ") -> " << c.str();
  }
  return os.str();
}

}  // namespace gcalc
