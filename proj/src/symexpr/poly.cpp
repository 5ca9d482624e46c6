#include "warpsgk/symexpr/poly.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace warpsgk::symexpr {

namespace {

struct SymbolTable {
  std::mutex mu;
  std::unordered_map<std::string, int> ids;
  std::deque<std::string> names;  // deque: references stay valid on growth
};

SymbolTable& symbol_table() {
  static SymbolTable table;
  return table;
}

}  // namespace

int intern_symbol(std::string_view name) {
  auto& t = symbol_table();
  std::lock_guard lock(t.mu);
  auto [it, inserted] = t.ids.try_emplace(std::string(name), static_cast<int>(t.names.size()));
  if (inserted) t.names.emplace_back(name);
  return it->second;
}

const std::string& symbol_name(int id) {
  auto& t = symbol_table();
  std::lock_guard lock(t.mu);
  return t.names.at(static_cast<std::size_t>(id));
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  std::vector<Factor> merged;
  for (const auto& [g, e] : factors_) {
    if (!merged.empty() && merged.back().first == g)
      merged.back().second += e;
    else
      merged.emplace_back(g, e);
  }
  std::erase_if(merged, [](const Factor& f) { return f.second == 0; });
  factors_ = std::move(merged);
}

Monomial Monomial::generator(int gen, int exponent) {
  Monomial m;
  if (exponent != 0) m.factors_.emplace_back(gen, exponent);
  return m;
}

int Monomial::exponent(int gen) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{gen, INT32_MIN});
  return (it != factors_.end() && it->first == gen) ? it->second : 0;
}

namespace {

template <typename Op>
Monomial::Factor* merge_factors(const std::vector<Monomial::Factor>& a,
                                const std::vector<Monomial::Factor>& b,
                                std::vector<Monomial::Factor>& out, Op op) {
  std::size_t i = 0, j = 0;
  out.reserve(a.size() + b.size());
  while (i < a.size() || j < b.size()) {
    int g;
    int ea = 0, eb = 0;
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      g = a[i].first;
      ea = a[i++].second;
    } else if (i == a.size() || b[j].first < a[i].first) {
      g = b[j].first;
      eb = b[j++].second;
    } else {
      g = a[i].first;
      ea = a[i++].second;
      eb = b[j++].second;
    }
    int e = op(ea, eb);
    if (e != 0) out.emplace_back(g, e);
  }
  return nullptr;
}

}  // namespace

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  merge_factors(factors_, other.factors_, m.factors_, std::plus<int>());
  return m;
}

Monomial Monomial::quotient(const Monomial& other) const {
  Monomial m;
  merge_factors(factors_, other.factors_, m.factors_, std::minus<int>());
  return m;
}

Monomial Monomial::meet(const Monomial& a, const Monomial& b) {
  Monomial m;
  merge_factors(a.factors_, b.factors_, m.factors_,
                [](int x, int y) { return std::min(x, y); });
  return m;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial(), c);
}

Poly::Poly(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.emplace(m, c);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
}

std::optional<Rational> Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (is_constant()) return terms_.begin()->second;
  return std::nullopt;
}

std::vector<int> Poly::generators() const {
  std::vector<int> gens;
  for (const auto& [m, c] : terms_)
    for (const auto& [g, e] : m.factors()) gens.push_back(g);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

std::vector<int> Poly::symbols() const {
  std::vector<int> syms;
  for (int g : generators()) syms.push_back(generator_symbol(g));
  syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
  return syms;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  if (is_zero() || o.is_zero()) return r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

Poly Poly::times_monomial(const Monomial& mono) const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m * mono, c);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result(Rational(1));
  Poly base = *this;
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e != 0) base = base * base;
  }
  return result;
}

const std::pair<const Monomial, Rational>& Poly::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading_term of zero polynomial");
  return *terms_.rbegin();
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial();
  auto it = terms_.begin();
  Monomial m = it->first;
  for (++it; it != terms_.end(); ++it) m = Monomial::meet(m, it->first);
  return m;
}

Poly Poly::derivative(int sym) const {
  const int xg = coord_generator(sym);
  const int eg = exp_generator(sym);
  Poly r;
  for (const auto& [m, c] : terms_) {
    const int a = m.exponent(xg);
    const int k = m.exponent(eg);
    if (a != 0) r.add_term(m.quotient(Monomial::generator(xg)), c * a);
    if (k != 0) r.add_term(m, c * k);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Dense recursive gcd over Q[v_0, ..., v_{k-1}]

namespace {

using Exps = std::vector<int>;

struct DPoly {
  // Descending lex order: begin() is the leading term.
  std::map<Exps, Rational, std::greater<Exps>> t;

  bool zero() const { return t.empty(); }
  bool constant() const {
    if (t.empty()) return true;
    if (t.size() != 1) return false;
    const auto& e = t.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
  }
  void add(const Exps& e, const Rational& c) {
    if (c == 0) return;
    auto [it, ins] = t.try_emplace(e, c);
    if (!ins) {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
  }
};

DPoly dsub(const DPoly& a, const DPoly& b) {
  DPoly r = a;
  for (const auto& [e, c] : b.t) r.add(e, -c);
  return r;
}

DPoly dmul(const DPoly& a, const DPoly& b) {
  DPoly r;
  if (a.zero() || b.zero()) return r;
  Exps e;
  for (const auto& [ea, ca] : a.t)
    for (const auto& [eb, cb] : b.t) {
      e.resize(ea.size());
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] = ea[i] + eb[i];
      r.add(e, ca * cb);
    }
  return r;
}

DPoly dscale(const DPoly& a, const Rational& c) {
  DPoly r = a;
  for (auto& [e, v] : r.t) v *= c;
  return r;
}

DPoly dmonic(const DPoly& a) {
  if (a.zero()) return a;
  return dscale(a, 1 / a.t.begin()->second);
}

DPoly done(std::size_t k) {
  DPoly r;
  r.t.emplace(Exps(k, 0), Rational(1));
  return r;
}

int ddeg(const DPoly& a, std::size_t v) {
  int d = -1;
  for (const auto& [e, c] : a.t) d = std::max(d, e[v]);
  return d;
}

Exps dmin_exps(const DPoly& a) {
  Exps m = a.t.begin()->first;
  for (const auto& [e, c] : a.t)
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

DPoly dshift(const DPoly& a, const Exps& s, int sign) {
  DPoly r;
  for (const auto& [e, c] : a.t) {
    Exps f = e;
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += sign * s[i];
    r.t.emplace(std::move(f), c);
  }
  return r;
}

// Coefficients of a as a univariate polynomial in v (v-exponent removed).
std::vector<DPoly> dcoeffs(const DPoly& a, std::size_t v) {
  std::vector<DPoly> out(static_cast<std::size_t>(std::max(ddeg(a, v), 0)) + 1);
  for (const auto& [e, c] : a.t) {
    Exps f = e;
    int d = f[v];
    f[v] = 0;
    out[static_cast<std::size_t>(d)].t.emplace(std::move(f), c);
  }
  return out;
}

DPoly dfrom_coeffs(const std::vector<DPoly>& cs, std::size_t v) {
  DPoly r;
  for (std::size_t d = 0; d < cs.size(); ++d)
    for (const auto& [e, c] : cs[d].t) {
      Exps f = e;
      f[v] = static_cast<int>(d);
      r.t.emplace(std::move(f), c);
    }
  return r;
}

std::optional<DPoly> ddivide(const DPoly& a, const DPoly& b) {
  if (b.zero()) throw std::domain_error("polynomial division by zero");
  DPoly q;
  DPoly r = a;
  const auto& [lb, cb] = *b.t.begin();
  while (!r.zero()) {
    const auto& [lr, cr] = *r.t.begin();
    Exps e(lr.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = lr[i] - lb[i];
      if (e[i] < 0) return std::nullopt;
    }
    Rational c = cr / cb;
    DPoly term;
    term.t.emplace(e, c);
    q.add(e, c);
    r = dsub(r, dmul(term, b));
  }
  return q;
}

DPoly dgcd(const DPoly& a, const DPoly& b);

DPoly dcontent(const DPoly& a, std::size_t v) {
  auto cs = dcoeffs(a, v);
  DPoly g;
  for (const auto& c : cs) {
    if (c.zero()) continue;
    g = g.zero() ? dmonic(c) : dgcd(g, c);
    if (g.constant()) break;
  }
  return g;
}

// Scale factor that turns a rational polynomial into a primitive integer one.
Rational dnumeric_content_inverse(const std::vector<DPoly>& cs) {
  mpz_class l = 1, g = 0;
  for (const auto& c : cs)
    for (const auto& [e, v] : c.t) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num().get_mpz_t());
    }
  if (g == 0) return 1;
  Rational r(l, g);
  r.canonicalize();
  return r;
}

std::vector<DPoly> dprimpart_coeffs(std::vector<DPoly> cs, std::size_t v) {
  DPoly all = dfrom_coeffs(cs, v);
  DPoly cont = dcontent(all, v);
  if (!cont.constant())
    for (auto& c : cs) {
      if (c.zero()) continue;
      c = *ddivide(c, cont);
    }
  const Rational s = dnumeric_content_inverse(cs);
  if (s != 1)
    for (auto& c : cs) c = dscale(c, s);
  return cs;
}

void trim(std::vector<DPoly>& cs) {
  while (!cs.empty() && cs.back().zero()) cs.pop_back();
}

// Primitive polynomial remainder sequence in variable v.
DPoly dgcd_primitive(DPoly a, DPoly b, std::size_t v, std::size_t k) {
  auto A = dcoeffs(a, v);
  auto B = dcoeffs(b, v);
  trim(A);
  trim(B);
  if (A.size() < B.size()) std::swap(A, B);
  for (auto* X : {&A, &B}) {
    const Rational s = dnumeric_content_inverse(*X);
    if (s != 1)
      for (auto& c : *X) c = dscale(c, s);
  }
  while (true) {
    if (B.size() == 1) return done(k);  // primitive and free of v
    // Pseudo-remainder of A by B.
    std::vector<DPoly> R = A;
    const DPoly& lcB = B.back();
    while (R.size() >= B.size()) {
      DPoly lcR = R.back();
      const std::size_t shift = R.size() - B.size();
      for (auto& c : R) c = dmul(c, lcB);
      for (std::size_t i = 0; i < B.size(); ++i) R[i + shift] = dsub(R[i + shift], dmul(lcR, B[i]));
      trim(R);
      if (R.empty()) break;
    }
    if (R.empty()) {
      return dmonic(dfrom_coeffs(B, v));
    }
    A = std::move(B);
    B = dprimpart_coeffs(std::move(R), v);
  }
}

// Heuristic gcd (evaluation at a large integer, recursive gcd, ξ-adic
// reconstruction, trial division). Operates on integer polynomials; the
// variables below `level` are absent. Returns nullopt when every attempt
// fails so the caller can fall back to the remainder sequence.
struct HeuResult {
  DPoly h, cf, cg;
};

mpz_class dmax_norm(const DPoly& a) {
  mpz_class m = 0;
  for (const auto& [e, c] : a.t) {
    mpz_class v = abs(c.get_num());
    if (v > m) m = v;
  }
  return m;
}

bool dhas_var(const DPoly& a, std::size_t v) {
  for (const auto& [e, c] : a.t)
    if (e[v] != 0) return true;
  return false;
}

DPoly deval(const DPoly& a, std::size_t v, const mpz_class& x) {
  DPoly r;
  std::vector<mpz_class> pw{1};
  for (const auto& [e, c] : a.t) {
    while (pw.size() <= static_cast<std::size_t>(e[v])) pw.push_back(pw.back() * x);
    Exps f = e;
    f[v] = 0;
    r.add(f, c * Rational(pw[static_cast<std::size_t>(e[v])]));
  }
  return r;
}

// Symmetric-remainder reconstruction of a polynomial in v from its image at v = x.
DPoly dinterpolate(DPoly h, std::size_t v, const mpz_class& x) {
  DPoly out;
  int d = 0;
  const mpz_class half = x / 2;
  while (!h.zero()) {
    DPoly g;
    for (const auto& [e, c] : h.t) {
      mpz_class r = c.get_num() % x;  // truncates toward zero
      if (r < 0) r += x;
      if (r > half) r -= x;
      if (r != 0) g.t.emplace(e, Rational(r));
    }
    for (const auto& [e, c] : g.t) {
      Exps f = e;
      f[v] = d;
      out.t.emplace(std::move(f), c);
    }
    DPoly next;
    for (const auto& [e, c] : dsub(h, g).t) next.t.emplace(e, Rational(c.get_num() / x));
    h = std::move(next);
    ++d;
  }
  if (!out.zero() && out.t.begin()->second < 0) out = dscale(out, -1);
  return out;
}

DPoly dprimitive_z(const DPoly& a) {
  mpz_class g = 0;
  for (const auto& [e, c] : a.t) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
  if (g == 0 || g == 1) return a;
  return dscale(a, Rational(1) / Rational(g));
}

std::optional<HeuResult> dheu_gcd(const DPoly& f, const DPoly& g, std::size_t level, std::size_t k) {
  if (f.zero() || g.zero()) return std::nullopt;
  while (level < k && !dhas_var(f, level) && !dhas_var(g, level)) ++level;
  if (level == k) {
    const mpz_class a = f.t.begin()->second.get_num();
    const mpz_class b = g.t.begin()->second.get_num();
    mpz_class h;
    mpz_gcd(h.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    HeuResult r;
    r.h = done(k);
    r.h = dscale(r.h, Rational(h));
    r.cf = dscale(done(k), Rational(a / h));
    r.cg = dscale(done(k), Rational(b / h));
    return r;
  }
  mpz_class gc = 0;
  for (const auto* p : {&f, &g})
    for (const auto& [e, c] : p->t) mpz_gcd(gc.get_mpz_t(), gc.get_mpz_t(), c.get_num().get_mpz_t());
  const DPoly F = dscale(f, Rational(1) / Rational(gc));
  const DPoly G = dscale(g, Rational(1) / Rational(gc));
  const mpz_class fn = dmax_norm(F), gn = dmax_norm(G);
  const mpz_class B = 2 * std::min(fn, gn) + 29;
  mpz_class x = std::min(B, mpz_class(99 * sqrt(B)));
  const mpz_class lf = abs(F.t.begin()->second.get_num()), lg = abs(G.t.begin()->second.get_num());
  x = std::max(x, mpz_class(2 * std::min(mpz_class(fn / lf), mpz_class(gn / lg)) + 4));
  auto try_div = [&](const DPoly& a, const DPoly& b) { return ddivide(a, b); };
  for (int attempt = 0; attempt < 6; ++attempt) {
    const DPoly ff = deval(F, level, x), gg = deval(G, level, x);
    if (!ff.zero() && !gg.zero()) {
      if (auto sub = dheu_gcd(ff, gg, level + 1, k)) {
        DPoly h = dprimitive_z(dinterpolate(sub->h, level, x));
        if (!h.zero()) {
          if (auto cf = try_div(F, h))
            if (auto cg = try_div(G, h)) return HeuResult{dscale(h, Rational(gc)), *cf, *cg};
        }
        DPoly cff = dinterpolate(sub->cf, level, x);
        if (!cff.zero())
          if (auto hh = try_div(F, cff))
            if (auto cg = try_div(G, *hh)) return HeuResult{dscale(*hh, Rational(gc)), cff, *cg};
        DPoly cfg = dinterpolate(sub->cg, level, x);
        if (!cfg.zero())
          if (auto hh = try_div(G, cfg))
            if (auto cf = try_div(F, *hh)) return HeuResult{dscale(*hh, Rational(gc)), *cf, cfg};
      }
    }
    mpz_class r = sqrt(sqrt(x));
    x = 73794 * x * r / 27011;
  }
  return std::nullopt;
}

DPoly dgcd(const DPoly& a0, const DPoly& b0) {
  if (a0.zero()) return dmonic(b0);
  if (b0.zero()) return dmonic(a0);
  const std::size_t k = a0.t.begin()->first.size();
  if (a0.constant() || b0.constant()) return done(k);

  // Monomial content.
  Exps ma = dmin_exps(a0), mb = dmin_exps(b0), m(k);
  for (std::size_t i = 0; i < k; ++i) m[i] = std::min(ma[i], mb[i]);
  DPoly a = dshift(a0, ma, -1);
  DPoly b = dshift(b0, mb, -1);
  DPoly mono;
  mono.t.emplace(m, Rational(1));

  auto finish = [&](const DPoly& g) { return dmonic(dmul(mono, g)); };

  if (a.constant() || b.constant()) return finish(done(k));
  if (a.t.size() == 1 || b.t.size() == 1) return finish(done(k));

  // Cheap divisibility checks catch the common equal-or-dividing case.
  if (a.t.size() <= b.t.size()) {
    if (ddivide(b, a)) return finish(a);
  } else {
    if (ddivide(a, b)) return finish(b);
  }

  {
    const DPoly za = dprimitive_z(dscale(a, dnumeric_content_inverse({a})));
    const DPoly zb = dprimitive_z(dscale(b, dnumeric_content_inverse({b})));
    if (auto h = dheu_gcd(za, zb, 0, k)) return finish(h->h);
  }

  // Main variable: first variable present in either operand.
  std::size_t v = k;
  bool in_a = false, in_b = false;
  for (std::size_t i = 0; i < k && v == k; ++i) {
    in_a = ddeg(a, i) > 0;
    in_b = ddeg(b, i) > 0;
    if (in_a || in_b) v = i;
  }
  if (v == k) return finish(done(k));
  if (!in_b) return finish(dgcd(dcontent(a, v), b));
  if (!in_a) return finish(dgcd(a, dcontent(b, v)));

  DPoly ca = dcontent(a, v);
  DPoly cb = dcontent(b, v);
  DPoly c = dgcd(ca, cb);
  DPoly pa = ca.constant() ? a : *ddivide(a, ca);
  DPoly pb = cb.constant() ? b : *ddivide(b, cb);
  DPoly g = dgcd_primitive(pa, pb, v, k);
  if (!g.constant()) {
    DPoly cg = dcontent(g, v);
    if (!cg.constant()) g = *ddivide(g, cg);
  }
  return finish(dmul(c, g));
}

// Shared generator list for a pair of polynomials.
struct DenseFrame {
  std::vector<int> gens;
  std::unordered_map<int, std::size_t> index;

  explicit DenseFrame(std::vector<int> g) : gens(std::move(g)) {
    for (std::size_t i = 0; i < gens.size(); ++i) index[gens[i]] = i;
  }

  DPoly to_dense(const Poly& p) const {
    DPoly d;
    for (const auto& [m, c] : p.terms()) {
      Exps e(gens.size(), 0);
      for (const auto& [g, x] : m.factors()) e[index.at(g)] = x;
      d.t.emplace(std::move(e), c);
    }
    return d;
  }

  Poly to_sparse(const DPoly& d) const {
    Poly p;
    for (const auto& [e, c] : d.t) {
      std::vector<Monomial::Factor> f;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) f.emplace_back(gens[i], e[i]);
      p += Poly(Monomial(std::move(f)), c);
    }
    return p;
  }
};

// Exponential part of the monomial content: the unit to strip so that every
// exponential exponent becomes non-negative with minimum zero.
Monomial exp_content(const Poly& p) {
  Monomial mc = p.monomial_content();
  std::vector<Monomial::Factor> f;
  for (const auto& [g, e] : mc.factors())
    if (is_exp_generator(g)) f.emplace_back(g, e);
  return Monomial(std::move(f));
}

std::vector<int> union_generators(const Poly& a, const Poly& b) {
  auto ga = a.generators();
  auto gb = b.generators();
  std::vector<int> u;
  std::set_union(ga.begin(), ga.end(), gb.begin(), gb.end(), std::back_inserter(u));
  return u;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return Poly();
  const Poly an = a.is_zero() ? a : a.times_monomial(Monomial().quotient(exp_content(a)));
  const Poly bn = b.is_zero() ? b : b.times_monomial(Monomial().quotient(exp_content(b)));
  if (an.is_constant() && !an.is_zero()) return Poly(Rational(1));
  if (bn.is_constant() && !bn.is_zero()) return Poly(Rational(1));
  if (an.is_monomial() || bn.is_monomial()) {
    // gcd with a monomial is a coordinate power product.
    const Monomial m = an.is_zero()   ? bn.monomial_content()
                       : bn.is_zero() ? an.monomial_content()
                                      : Monomial::meet(an.monomial_content(), bn.monomial_content());
    if (an.is_zero() || bn.is_zero()) {
      const Poly& nz = an.is_zero() ? bn : an;
      return nz.scaled(1 / nz.leading_term().second);
    }
    return Poly(m, 1);
  }
  DenseFrame frame(union_generators(an, bn));
  DPoly g = dgcd(frame.to_dense(an), frame.to_dense(bn));
  Poly r = frame.to_sparse(g);
  return r.scaled(1 / r.leading_term().second);
}

std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return Poly();
  if (b.is_monomial()) {
    const auto& [mb, cb] = *b.terms().begin();
    Poly q;
    for (const auto& [m, c] : a.terms()) {
      Monomial r = m.quotient(mb);
      for (const auto& [g, e] : r.factors())
        if (!is_exp_generator(g) && e < 0) return std::nullopt;
      q += Poly(r, c / cb);
    }
    return q;
  }
  const Monomial ua = exp_content(a);
  const Monomial ub = exp_content(b);
  const Poly an = a.times_monomial(Monomial().quotient(ua));
  const Poly bn = b.times_monomial(Monomial().quotient(ub));
  DenseFrame frame(union_generators(an, bn));
  auto q = ddivide(frame.to_dense(an), frame.to_dense(bn));
  if (!q) return std::nullopt;
  return frame.to_sparse(*q).times_monomial(ua.quotient(ub));
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest terms first reads more naturally.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Rational coeff = c;
    if (first) {
      if (coeff < 0) {
        os << "-";
        coeff = -coeff;
      }
    } else {
      os << (coeff < 0 ? " - " : " + ");
      if (coeff < 0) coeff = -coeff;
    }
    first = false;
    std::vector<std::string> parts;
    std::string lin;  // exponent of e
    for (const auto& [g, e] : m.factors()) {
      const std::string& name = symbol_name(generator_symbol(g));
      if (!is_exp_generator(g)) {
        parts.push_back(e == 1 ? name : name + "^" + std::to_string(e));
      } else {
        if (lin.empty()) {
          if (e == -1)
            lin += "-";
          else if (e != 1)
            lin += std::to_string(e) + "*";
        } else {
          lin += e < 0 ? " - " : " + ";
          if (std::abs(e) != 1) lin += std::to_string(std::abs(e)) + "*";
        }
        lin += name;
      }
    }
    if (!lin.empty()) parts.push_back("exp(" + lin + ")");
    const bool unit = coeff == 1;
    if (!unit || parts.empty()) {
      os << coeff.get_str();
      if (!parts.empty()) os << "*";
    }
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
  }
  return os.str();
}

}  // namespace warpsgk::symexpr
