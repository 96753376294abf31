#include "gcalc/diffpoly.hpp"

#include <algorithm>
#include <sstream>

namespace gcalc {

Rat rat_from_string(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty rational");
  Rat r;
  if (r.set_str(t, 10) != 0)
    throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

Rat rat_binomial(long n, long k) {
  if (k < 0 || k > n) return Rat(0);
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rat(z);
}

Rat rat_factorial(long n) {
  mpz_class z;
  mpz_fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(z);
}

DiffPoly::DiffPoly(const Rat& c) {
  if (!gcalc::is_zero(c)) terms_[{}] = c;
}

DiffPoly DiffPoly::var(DiffVar v) {
  DiffPoly p;
  p.terms_[{{v, 1}}] = Rat(1);
  return p;
}

bool DiffPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat DiffPoly::constant_term() const {
  auto it = terms_.find({});
  return it == terms_.end() ? Rat(0) : it->second;
}

void DiffPoly::add_term(const Monomial& m, const Rat& c) {
  if (gcalc::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (gcalc::is_zero(it->second)) terms_.erase(it);
  }
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

namespace {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first)
      r.push_back(a[i++]);
    else if (b[j].first < a[i].first)
      r.push_back(b[j++]);
    else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back(b[j]);
  return r;
}

}  // namespace

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

DiffPoly operator*(const Rat& c, const DiffPoly& a) {
  DiffPoly r;
  if (gcalc::is_zero(c)) return r;
  for (const auto& [m, cc] : a.terms_) r.terms_[m] = c * cc;
  return r;
}

DiffPoly DiffPoly::pow(int e) const {
  DiffPoly r(Rat(1));
  DiffPoly base = *this;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * base;
    base = base * base;
  }
  return r;
}

bool operator<(const DiffPoly& a, const DiffPoly& b) {
  return std::lexicographical_compare(
      a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
      [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
      });
}

int DiffPoly::max_order() const {
  int n = -1;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) n = std::max(n, v.ord);
  return n;
}

int DiffPoly::max_gen() const {
  int g = -1;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) g = std::max(g, v.gen);
  return g;
}

std::vector<DiffVar> DiffPoly::support() const {
  std::vector<DiffVar> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

Rat DiffPoly::eval_at_zero() const { return constant_term(); }

DiffPoly total_derivative(const DiffPoly& f) {
  DiffPoly r;
  for (const auto& [m, c] : f.terms()) {
    for (size_t i = 0; i < m.size(); ++i) {
      // d/dx of v^e -> e v^(e-1) * v'
      Monomial rest;
      rest.reserve(m.size() + 1);
      for (size_t j = 0; j < m.size(); ++j) {
        if (j == i) {
          if (m[j].second > 1) rest.emplace_back(m[j].first, m[j].second - 1);
        } else {
          rest.push_back(m[j]);
        }
      }
      Monomial raised{{DiffVar{m[i].first.gen, m[i].first.ord + 1}, 1}};
      r.add_term(mono_mul(rest, raised), c * Rat(m[i].second));
    }
  }
  return r;
}

DiffPoly total_derivative(const DiffPoly& f, int times) {
  DiffPoly r = f;
  for (int t = 0; t < times; ++t) r = total_derivative(r);
  return r;
}

DiffPoly partial_derivative(const DiffPoly& f, DiffVar v) {
  DiffPoly r;
  for (const auto& [m, c] : f.terms()) {
    for (size_t i = 0; i < m.size(); ++i) {
      if (!(m[i].first == v)) continue;
      Monomial rest;
      for (size_t j = 0; j < m.size(); ++j) {
        if (j == i) {
          if (m[j].second > 1) rest.emplace_back(m[j].first, m[j].second - 1);
        } else {
          rest.push_back(m[j]);
        }
      }
      r.add_term(rest, c * Rat(m[i].second));
    }
  }
  return r;
}

DiffPoly partial_derivative(const DiffPoly& f, int gen, int ord) {
  return partial_derivative(f, DiffVar{gen, ord});
}

void LambdaPoly::add(const std::vector<int>& mindex, const DiffPoly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = coeffs.emplace(mindex, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

int LambdaPoly::max_total_degree() const {
  int d = 0;
  for (const auto& [m, p] : coeffs) {
    int t = 0;
    for (int e : m) t += e;
    d = std::max(d, t);
  }
  return d;
}

std::string LambdaPoly::str() const {
  if (coeffs.empty()) return "0";
  static const char* names2[] = {"lambda", "mu"};
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, p] : coeffs) {
    if (!first) os << " + ";
    first = false;
    os << "(" << p.str() << ")";
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      os << "*";
      if (arity <= 2)
        os << names2[i];
      else
        os << "l" << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

LambdaPoly lambda_action(int gen, const DiffPoly& f) {
  LambdaPoly r;
  r.arity = 1;
  for (int n = 0; n <= f.max_order(); ++n)
    r.add({n}, partial_derivative(f, gen, n));
  return r;
}

DiffPoly variational_derivative(const DiffPoly& f, int gen) {
  DiffPoly r;
  int sign = 1;
  for (int n = 0; n <= f.max_order(); ++n, sign = -sign) {
    DiffPoly p = partial_derivative(f, gen, n);
    r += Rat(sign) * total_derivative(p, n);
  }
  return r;
}

namespace {

// Polynomial antiderivative in a single variable v: each monomial
// m * v^p maps to m * v^(p+1)/(p+1).
DiffPoly integrate_in_var(const DiffPoly& f, DiffVar v) {
  DiffPoly r;
  for (const auto& [m, c] : f.terms()) {
    Monomial out;
    bool placed = false;
    for (const auto& [w, e] : m) {
      if (w == v) {
        out.emplace_back(w, e + 1);
        placed = true;
      } else {
        out.push_back({w, e});
      }
    }
    if (!placed) {
      out.push_back({v, 1});
      std::sort(out.begin(), out.end());
    }
    int p = 0;
    for (const auto& [w, e] : out)
      if (w == v) p = e;
    r.add_term(out, c / Rat(p));
  }
  return r;
}

}  // namespace

ExactnessResult is_total_derivative(const DiffPoly& f) {
  for (int g = 0; g <= f.max_gen(); ++g)
    if (!variational_derivative(f, g).is_zero()) return {false, std::nullopt};
  if (!gcalc::is_zero(f.eval_at_zero())) return {false, std::nullopt};

  // Witness construction: strip the top variable (order-dominant), which
  // appears linearly in any exact f, and integrate its coefficient in the
  // order-reduced partner variable.
  DiffPoly rem = f, g;
  while (!rem.is_zero()) {
    auto vars = rem.support();
    DiffVar top = vars.front();
    for (DiffVar v : vars)
      if (std::pair(v.ord, v.gen) > std::pair(top.ord, top.gen)) top = v;
    if (top.ord == 0) return {false, std::nullopt};  // exactness check failed
    DiffPoly coeff = partial_derivative(rem, top);
    if (!partial_derivative(coeff, top).is_zero())
      return {false, std::nullopt};  // not linear in the top variable
    DiffPoly piece = integrate_in_var(coeff, DiffVar{top.gen, top.ord - 1});
    g += piece;
    rem -= total_derivative(piece);
  }
  return {true, g};
}

bool quotient_equal(const DiffPoly& f, const DiffPoly& g) {
  return is_total_derivative(f - g).exact;
}

namespace {

std::string var_str(DiffVar v) {
  std::string s = "u" + std::to_string(v.gen + 1);
  if (v.ord >= 3)
    s += "(" + std::to_string(v.ord) + ")";
  else
    s += std::string(static_cast<size_t>(v.ord), '\'');
  return s;
}

}  // namespace

std::string DiffPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat a = c;
    if (first) {
      if (sgn(a) < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    bool coeff_one = (a == Rat(1));
    if (!coeff_one || m.empty()) os << rat_to_string(a);
    bool need_star = !coeff_one || m.empty();
    for (const auto& [v, e] : m) {
      if (need_star) os << "*";
      need_star = true;
      os << var_str(v);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace gcalc
