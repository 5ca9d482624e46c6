#include "warpsgk/theorems/theorems.hpp"

#include "warpsgk/knproducts/knproducts.hpp"
#include "warpsgk/recurrence/lsq.hpp"
#include "warpsgk/symexpr/sampling.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace warpsgk::theorems {

using geometry::Curvature;
using geometry::SymmetryClass;
using geometry::Valence;
using knproducts::kulkarni_nomizu;
using recurrence::Structure;
using symexpr::ZeroVerdict;

namespace {

/// Base and fiber quantities the conditions are built from, in the local
/// index ranges of each factor.
template <class T>
struct Ingredients {
  std::size_t p = 0, q = 0;
  T f, P, Q, trT, kappa_b, kappa_f;
  std::vector<T> df, df_up, dP;
  Array<T> gb, Rb, dRb, Sb, Tb, dT, ggb, gSb, gTb, SSb, STb, TTb;
  Array<T> gf, Rf, dRf, Sf, ggf, gSf, SSf;
  std::size_t n() const { return p + q; }
};

/// Four forms over the product index range, in the order Π, Φ, Ψ, Θ.
template <class T>
using Forms = std::array<std::vector<T>, 4>;

Ingredients<Expr> symbolic_ingredients(const WarpedSpec& spec) {
  warped::validate(spec);
  const Curvature base(spec.base), fiber(spec.fiber);
  const warped::WarpedAux aux = warped::warped_auxiliaries(spec);
  Ingredients<Expr> I;
  I.p = spec.base.dim();
  I.q = spec.fiber.dim();
  I.f = symexpr::canonicalize(spec.f);
  I.P = aux.P;
  I.Q = aux.Q;
  I.trT = aux.trT;
  I.kappa_b = base.kappa;
  I.kappa_f = fiber.kappa;
  I.df = aux.df.components;
  I.df_up = aux.df_up.components;
  I.dP = aux.dP.components;
  const geometry::TensorField& gb = spec.base.tensor();
  I.gb = gb.components;
  I.Rb = base.R.components;
  I.dRb = base.nabla_R.components;
  I.Sb = base.S.components;
  I.Tb = aux.T.components;
  I.dT = aux.nabla_T.components;
  I.ggb = kulkarni_nomizu(gb, gb).components;
  I.gSb = kulkarni_nomizu(gb, base.S).components;
  I.gTb = kulkarni_nomizu(gb, aux.T).components;
  I.SSb = kulkarni_nomizu(base.S, base.S).components;
  I.STb = kulkarni_nomizu(base.S, aux.T).components;
  I.TTb = kulkarni_nomizu(aux.T, aux.T).components;
  const geometry::TensorField& gf = spec.fiber.tensor();
  I.gf = gf.components;
  I.Rf = fiber.R.components;
  I.dRf = fiber.nabla_R.components;
  I.Sf = fiber.S.components;
  I.ggf = kulkarni_nomizu(gf, gf).components;
  I.gSf = kulkarni_nomizu(gf, fiber.S).components;
  I.SSf = kulkarni_nomizu(fiber.S, fiber.S).components;
  return I;
}

Array<Real> eval(const Array<Expr>& a, const Point& p) {
  Array<Real> out(a.dim(), a.rank(), Real(0));
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!a.at_flat(k).is_zero_constant()) out.at_flat(k) = symexpr::evaluate(a.at_flat(k), p);
  return out;
}

std::vector<Real> eval(const std::vector<Expr>& v, const Point& p) {
  std::vector<Real> out;
  for (const Expr& e : v) out.push_back(symexpr::evaluate(e, p));
  return out;
}

Ingredients<Real> numeric_ingredients(const Ingredients<Expr>& I, const Point& pt) {
  Ingredients<Real> N;
  N.p = I.p;
  N.q = I.q;
  N.f = symexpr::evaluate(I.f, pt);
  N.P = symexpr::evaluate(I.P, pt);
  N.Q = symexpr::evaluate(I.Q, pt);
  N.trT = symexpr::evaluate(I.trT, pt);
  N.kappa_b = symexpr::evaluate(I.kappa_b, pt);
  N.kappa_f = symexpr::evaluate(I.kappa_f, pt);
  N.df = eval(I.df, pt);
  N.df_up = eval(I.df_up, pt);
  N.dP = eval(I.dP, pt);
  for (auto [dst, src] : {std::pair{&N.gb, &I.gb}, {&N.Rb, &I.Rb}, {&N.dRb, &I.dRb}, {&N.Sb, &I.Sb},
                          {&N.Tb, &I.Tb}, {&N.dT, &I.dT}, {&N.ggb, &I.ggb}, {&N.gSb, &I.gSb}, {&N.gTb, &I.gTb},
                          {&N.SSb, &I.SSb}, {&N.STb, &I.STb}, {&N.TTb, &I.TTb}, {&N.gf, &I.gf}, {&N.Rf, &I.Rf},
                          {&N.dRf, &I.dRf}, {&N.Sf, &I.Sf}, {&N.ggf, &I.ggf}, {&N.gSf, &I.gSf},
                          {&N.SSf, &I.SSf}})
    *dst = eval(*src, pt);
  return N;
}

/// The eight left-minus-right tensors on the product index range.
template <class T>
std::array<Array<T>, 8> assemble(const Ingredients<T>& I, const Forms<T>& w, const Reading& rd) {
  const std::size_t p = I.p, q = I.q, n = I.n();
  const T m(static_cast<int>(q));
  const T half = T(1) / T(2);
  const T two(2);
  const T f2 = I.f * I.f;
  const auto& Pi = w[0];
  const auto& Phi = w[1];
  const auto& Psi = w[2];
  const auto& Th = w[3];

  // base Kulkarni–Nomizu combinations seen by the base block
  Array<T> bSS(p, 4, T(0)), bgS(p, 4, T(0));
  for (std::size_t k = 0; k < bSS.size(); ++k) {
    bSS.at_flat(k) = I.SSb.at_flat(k) - two * m * I.STb.at_flat(k) + m * m * I.TTb.at_flat(k);
    bgS.at_flat(k) = I.gSb.at_flat(k) - m * I.gTb.at_flat(k);
  }
  Array<T> U(p, 2, T(0));
  for (std::size_t k = 0; k < U.size(); ++k) U.at_flat(k) = I.Sb.at_flat(k) - m * I.Tb.at_flat(k);

  std::array<Array<T>, 8> c;
  for (std::size_t k = 0; k < 8; ++k) c[k] = Array<T>(n, k == 6 ? 3 : 5, T(0));

  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b)
      for (std::size_t cc = 0; cc < p; ++cc)
        for (std::size_t d = 0; d < p; ++d) {
          const T& R = I.Rb(a, b, cc, d);
          const T& ss = bSS(a, b, cc, d);
          const T& gs = bgS(a, b, cc, d);
          const T& gg = I.ggb(a, b, cc, d);
          for (std::size_t e = 0; e < n; ++e) {
            const T rhs = Pi[e] * R + Phi[e] * ss + Psi[e] * gs + Th[e] * gg;
            if (e < p)
              c[0](a, b, cc, d, e) = I.dRb(a, b, cc, d, e) - rhs;
            else
              c[1](a, b, cc, d, e) = -rhs;
          }
        }

  for (std::size_t al = 0; al < q; ++al)
    for (std::size_t be = 0; be < q; ++be)
      for (std::size_t ga = 0; ga < q; ++ga)
        for (std::size_t de = 0; de < q; ++de) {
          const T& R = I.Rf(al, be, ga, de);
          const T& ss = I.SSf(al, be, ga, de);
          const T& gs = I.gSf(al, be, ga, de);
          const T& gg = I.ggf(al, be, ga, de);
          const std::size_t A = p + al, B = p + be, C = p + ga, D = p + de;
          for (std::size_t e = 0; e < p; ++e) {
            const T coef_gg = half * f2 * (T(rd.c2i_p_pi) * I.P * Pi[e] + T(rd.c2i_dp) * I.dP[e]) +
                              I.Q * I.Q * Phi[e] + I.f * I.Q * Psi[e] + f2 * Th[e];
            c[2](A, B, C, D, e) =
                -(I.df[e] + I.f * Pi[e]) * R - (Phi[e] * ss + (two * I.Q * Phi[e] + I.f * Psi[e]) * gs + coef_gg * gg);
          }
          for (std::size_t ep = 0; ep < q; ++ep) {
            const std::size_t E = p + ep;
            const T coef_gg = half * f2 * T(rd.c2ii_p_pi) * I.P * Pi[E] + I.Q * I.Q * Phi[E] +
                              I.f * I.Q * Psi[E] + f2 * Th[E];
            c[3](A, B, C, D, E) = I.f * I.dRf(al, be, ga, de, ep) -
                                  (I.f * Pi[E] * R + Phi[E] * ss + (T(rd.c2ii_q_phi) * I.Q * Phi[E] + I.f * Psi[E]) * gs +
                                   coef_gg * gg);
          }
        }

  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b)
      for (std::size_t al = 0; al < q; ++al)
        for (std::size_t be = 0; be < q; ++be) {
          const T& St = I.Sf(al, be);
          const T& gt = I.gf(al, be);
          for (std::size_t e = 0; e < n; ++e) {
            const T sfac = two * Phi[e] * U(a, b) + Psi[e] * I.gb(a, b);
            const T trans = e < p ? I.f * (I.dT(a, b, e) - Pi[e] * I.Tb(a, b)) : -I.f * Pi[e] * I.Tb(a, b);
            const T gfac = trans + (two * I.Q * Phi[e] + I.f * Psi[e]) * U(a, b) +
                           (I.Q * Psi[e] + two * I.f * Th[e]) * I.gb(a, b);
            c[e < p ? 4 : 5](a, p + al, b, p + be, e) = sfac * St + gfac * gt;
          }
        }

  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b)
      for (std::size_t cc = 0; cc < p; ++cc) {
        T s = I.df[a] * I.Tb(b, cc) - I.df[b] * I.Tb(a, cc);
        for (std::size_t d = 0; d < p; ++d) s = s + I.df_up[d] * I.Rb(a, b, cc, d);
        c[6](a, b, cc) = s;
      }

  for (std::size_t d = 0; d < p; ++d) {
    const T x = rd.c4ii_theta_p ? I.P * Th[d] : I.dP[d];
    for (std::size_t al = 0; al < q; ++al)
      for (std::size_t be = 0; be < q; ++be)
        for (std::size_t ga = 0; ga < q; ++ga)
          for (std::size_t ep = 0; ep < q; ++ep)
            c[7](d, p + al, p + be, p + ga, p + ep) =
                I.df[d] * I.Rf(al, be, ga, ep) - f2 * x * half * I.ggf(al, be, ga, ep);
  }
  return c;
}

const std::array<const char*, 8> kStatements = {
    "∇̄R̄ = Π̄⊗R̄ + Φ̄⊗(S̄∧S̄ - 2(n-p)S̄∧T + (n-p)²T∧T) + Ψ̄⊗(ḡ∧S̄ - (n-p)ḡ∧T) + Θ̄⊗ḡ∧ḡ",
    "-Π̃⊗R̄ = Φ̃⊗(S̄∧S̄ - 2(n-p)S̄∧T + (n-p)²T∧T) + Ψ̃⊗(ḡ∧S̄ - (n-p)ḡ∧T) + Θ̃⊗ḡ∧ḡ",
    "-(df + fΠ̄)⊗R̃ = Φ̄⊗S̃∧S̃ + (2QΦ̄ + fΨ̄)⊗g̃∧S̃ + (½f²(PΠ̄ - dP) + Q²Φ̄ + fQΨ̄ + f²Θ̄)⊗g̃∧g̃",
    "f∇̃R̃ = fΠ̃⊗R̃ + Φ̃⊗S̃∧S̃ + (2QΦ̃ + fΨ̃)⊗g̃∧S̃ + (½f²PΠ̃ + Q²Φ̃ + fQΨ̃ + f²Θ̃)⊗g̃∧g̃",
    "[2Φ̄⊗(S̄ - (n-p)T) + Ψ̄⊗ḡ]⊗S̃ = -[f(∇̄T - Π̄⊗T) + (2QΦ̄ + fΨ̄)⊗(S̄ - (n-p)T) + (QΨ̄ + 2fΘ̄)⊗ḡ]⊗g̃",
    "[2Φ̃⊗(S̄ - (n-p)T) + Ψ̃⊗ḡ]⊗S̃ = -[-fΠ̃⊗T + (2QΦ̃ + fΨ̃)⊗(S̄ - (n-p)T) + (QΨ̃ + 2fΘ̃)⊗ḡ]⊗g̃",
    "f^d R̄_abcd = -(f_a T_bc - f_b T_ac)",
    "df⊗R̃ = f² dP⊗G̃",
};

std::string signed_term(int c, const std::string& t) { return (c < 0 ? " - " : " + ") + t; }

// Statement text with the reading's signs and coefficients filled in.
std::string statement(std::size_t k, const Reading& r) {
  switch (k) {
    case 2:
      return std::string("-(df + fΠ̄)⊗R̃ = Φ̄⊗S̃∧S̃ + (2QΦ̄ + fΨ̄)⊗g̃∧S̃ + (") + (r.c2i_p_pi < 0 ? "-" : "") +
             "½f²(PΠ̄" + signed_term(r.c2i_p_pi * r.c2i_dp, "dP)") + " + Q²Φ̄ + fQΨ̄ + f²Θ̄)⊗g̃∧g̃";
    case 3:
      return std::string("f∇̃R̃ = fΠ̃⊗R̃ + Φ̃⊗S̃∧S̃ + (") + (r.c2ii_q_phi == 1 ? "" : std::to_string(r.c2ii_q_phi)) +
             "QΦ̃ + fΨ̃)⊗g̃∧S̃ + (" + (r.c2ii_p_pi < 0 ? "-" : "") + "½f²PΠ̃ + Q²Φ̃ + fQΨ̃ + f²Θ̃)⊗g̃∧g̃";
    case 7:
      return r.c4ii_theta_p ? "df⊗R̃ = f² PΘ̄⊗G̃" : kStatements[7];
    default:
      return kStatements[k];
  }
}

std::string reading_name(const Reading& r) {
  const Reading c = Reading::corrected();
  const bool same = r.c2i_p_pi == c.c2i_p_pi && r.c2i_dp == c.c2i_dp && r.c2ii_q_phi == c.c2ii_q_phi &&
                    r.c2ii_p_pi == c.c2ii_p_pi && r.c4ii_theta_p == c.c4ii_theta_p;
  return same ? "corrected" : "as-printed";
}

Forms<Expr> split_forms(const WarpedSpec& spec, const FormSet& forms) {
  const geometry::Chart ch = warped::product_chart(spec);
  Forms<Expr> w;
  const OneFormField* src[] = {&forms.Pi, &forms.Phi, &forms.Psi, &forms.Theta};
  const char* names[] = {"Pi", "Phi", "Psi", "Theta"};
  for (int k = 0; k < 4; ++k) {
    if (!(src[k]->chart == ch) || src[k]->dim() != ch.dim())
      throw std::invalid_argument(std::string("form ") + names[k] + " is not on the product chart");
    for (const Expr& e : src[k]->components) w[k].push_back(symexpr::canonicalize(e));
  }
  return w;
}

Forms<Real> eval_forms(const Forms<Expr>& w, const Point& p) {
  Forms<Real> out;
  for (int k = 0; k < 4; ++k) out[k] = eval(w[k], p);
  return out;
}

/// Seeded points of the product chart where every ingredient and form is
/// finite and f > 0.
std::vector<Point> draw_points(const Ingredients<Expr>& I, const Forms<Expr>& w, const geometry::Chart& chart,
                               const CheckOptions& opts) {
  symexpr::SampleBox box(chart, opts.seed);
  std::vector<Point> out;
  for (std::size_t attempt = 0; out.size() < opts.samples && attempt < 2000; ++attempt) {
    Point pt = box.next();
    try {
      const auto N = numeric_ingredients(I, pt);
      eval_forms(w, pt);
      if (N.f <= 0) continue;
    } catch (const symexpr::SingularPoint&) {
      continue;
    }
    out.push_back(std::move(pt));
  }
  return out;
}

Real frob(const Array<Real>& a) { return geometry::norm(a); }

ConditionResult evaluate_condition(const std::string& name, const std::string& statement, const Array<Expr>& comps,
                                   const geometry::Chart& chart, const std::vector<Point>& points,
                                   const CheckOptions& opts) {
  // the valence is nominal for rank 1; only the components are inspected
  static const Valence by_rank[] = {Valence::Scalar, Valence::Scalar, Valence::Lower2,
                                    Valence::Lower3, Valence::Lower4, Valence::Lower5};
  geometry::TensorField t;
  t.chart = chart;
  t.valence = by_rank[comps.rank()];
  t.components = comps;
  for (std::size_t k = 0; k < comps.size(); ++k) t.components.at_flat(k) = symexpr::canonicalize(comps.at_flat(k));
  ConditionResult r;
  r.name = name;
  r.statement = statement;
  r.points = points;
  symexpr::SamplingOptions so;
  so.samples = opts.samples;
  so.seed = opts.seed;
  const auto z = geometry::is_zero(t, so);
  r.zero = z.verdict;
  r.first_nonzero = z.first_nonzero;
  for (const Point& pt : points) r.max_residual = std::max(r.max_residual, frob(eval(t.components, pt)));
  r.verdict = z.verdict == ZeroVerdict::NonZero ? Verdict::Fails : Verdict::Holds;
  return r;
}

/// Rank-1 and rank-3 tensors used only by the recurrent variant.
Array<Expr> pad_to_product(const Array<Expr>& a, std::size_t n) {
  Array<Expr> out(n, a.rank(), Expr(0));
  for (std::size_t k = 0; k < a.size(); ++k) out(out.flatten(a.unflatten(k))) = a.at_flat(k);
  return out;
}

void finish(ConditionReport& r) {
  r.overall = Verdict::Holds;
  for (const auto& c : r.conditions)
    if (c.verdict == Verdict::Fails) r.overall = Verdict::Fails;
}

}  // namespace

FormSet zero_forms(const WarpedSpec& spec) {
  const geometry::Chart ch = warped::product_chart(spec);
  return {OneFormField(ch), OneFormField(ch), OneFormField(ch), OneFormField(ch)};
}

const ConditionResult* ConditionReport::find(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

ConditionReport check_theorem41(const WarpedSpec& spec, const FormSet& forms, const CheckOptions& opts,
                                FormulaVariant variant) {
  return check_theorem41(spec, forms,
                         variant == FormulaVariant::Corrected ? Reading::corrected() : Reading::printed_theorem(),
                         opts);
}

ConditionReport check_theorem41(const WarpedSpec& spec, const FormSet& forms, const Reading& reading,
                                const CheckOptions& opts) {
  const Forms<Expr> w = split_forms(spec, forms);
  const Ingredients<Expr> I = symbolic_ingredients(spec);
  const geometry::Chart chart = warped::product_chart(spec);
  const auto points = draw_points(I, w, chart, opts);
  const auto c = assemble(I, w, reading);
  ConditionReport r;
  r.title = "warped product SGK conditions";
  r.reading = reading_name(reading);
  for (std::size_t k = 0; k < 8; ++k)
    r.conditions.push_back(evaluate_condition(kConditionNames[k], statement(k, reading), c[k], chart, points, opts));
  finish(r);
  return r;
}

std::array<NumericTensor, 8> condition_residuals_at(const WarpedSpec& spec, const FormSet& forms, const Point& p,
                                                    const Reading& reading) {
  const Forms<Expr> w = split_forms(spec, forms);
  const auto N = numeric_ingredients(symbolic_ingredients(spec), p);
  return assemble(N, eval_forms(w, p), reading);
}

namespace {

std::vector<Real> flatten_all(const std::array<Array<Real>, 8>& c) {
  std::vector<Real> v;
  for (const auto& t : c) v.insert(v.end(), t.data().begin(), t.data().end());
  return v;
}

Real vnorm(const std::vector<Real>& v) {
  Real s = 0;
  for (const Real& x : v) s += x * x;
  return sqrt(s);
}

struct Direct {
  Point point;
  Real residual = 0;
  Real scale = 1;
  std::vector<std::vector<Real>> coefficients;  // [m][Π, Φ, Ψ, Θ]
};

std::vector<Direct> direct_sgk(const WarpedSpec& spec, const CheckOptions& opts) {
  const Curvature cw(warped::build_warped(spec));
  recurrence::ClassifyOptions co;
  co.samples = opts.samples;
  co.seed = opts.seed;
  co.tol = opts.tol;
  std::vector<Direct> out;
  for (const Point& pt : recurrence::sample_points(cw, co)) {
    const auto t = recurrence::evaluate_point(cw, pt);
    const auto sol = recurrence::solve_pointwise_coefficients(recurrence::target_at(Structure::SGK, t),
                                                              recurrence::basis_at(Structure::SGK, t), {}, opts.tol);
    Direct d;
    d.point = pt;
    d.residual = sol.max_residual;
    d.scale = std::max(Real(1), geometry::norm(t.nabla_R));
    d.coefficients = sol.coefficients;
    out.push_back(std::move(d));
  }
  return out;
}

Forms<Real> forms_from_coefficients(const std::vector<std::vector<Real>>& coef) {
  Forms<Real> w;
  for (const auto& row : coef)
    for (int k = 0; k < 4; ++k) w[k].push_back(row[k]);
  return w;
}

}  // namespace

const ReadingRow& ReadingComparison::row(const std::string& name) const {
  for (const auto& r : rows)
    if (r.name == name) return r;
  throw std::out_of_range("no condition " + name);
}

ReadingComparison compare_readings(const WarpedSpec& spec, const CheckOptions& opts) {
  const Ingredients<Expr> I = symbolic_ingredients(spec);
  ReadingComparison out;
  for (const char* name : kConditionNames) out.rows.push_back({name, 0, 0});
  for (const Direct& d : direct_sgk(spec, opts)) {
    if (d.residual >= opts.tol.tau_rel) continue;
    ++out.points;
    const auto N = numeric_ingredients(I, d.point);
    const auto w = forms_from_coefficients(d.coefficients);
    const auto good = assemble(N, w, Reading::corrected());
    const auto typeset = assemble(N, w, Reading::printed_theorem());
    for (std::size_t k = 0; k < 8; ++k) {
      out.rows[k].corrected = std::max(out.rows[k].corrected, frob(good[k]) / d.scale);
      out.rows[k].printed = std::max(out.rows[k].printed, frob(typeset[k]) / d.scale);
    }
  }
  bool corrected_ok = true, printed_ok = true;
  for (const auto& r : out.rows) {
    corrected_ok = corrected_ok && r.corrected < opts.tol.tau_rel;
    printed_ok = printed_ok && r.printed < opts.tol.tau_rel;
  }
  out.distinguishable = out.points > 0 && corrected_ok != printed_ok;
  if (out.points == 0 || (corrected_ok && printed_ok))
    out.preferred = "undetermined";
  else if (corrected_ok)
    out.preferred = "corrected";
  else if (printed_ok)
    out.preferred = "as-printed";
  else
    out.preferred = "neither";
  return out;
}

EquivalenceReport check_equivalence(const WarpedSpec& spec, const FormSet& forms, const CheckOptions& opts) {
  const Forms<Expr> w = split_forms(spec, forms);
  const Ingredients<Expr> I = symbolic_ingredients(spec);
  const std::size_t n = I.n();
  const Real tau = opts.tol.tau_rel;
  EquivalenceReport rep;
  for (const Direct& d : direct_sgk(spec, opts)) {
    EquivalencePoint ep;
    ep.point = d.point;
    ep.sgk_residual = d.residual;
    ep.sgk_holds = d.residual < tau;
    const auto N = numeric_ingredients(I, d.point);

    // the conditions are affine in the form values
    Forms<Real> zero;
    for (auto& v : zero) v.assign(n, Real(0));
    const std::vector<Real> c0 = flatten_all(assemble(N, zero, Reading::corrected()));
    std::vector<std::vector<Real>> columns;
    for (int k = 0; k < 4; ++k)
      for (std::size_t m = 0; m < n; ++m) {
        Forms<Real> unit = zero;
        unit[k][m] = 1;
        std::vector<Real> col = flatten_all(assemble(N, unit, Reading::corrected()));
        for (std::size_t i = 0; i < col.size(); ++i) col[i] -= c0[i];
        columns.push_back(std::move(col));
      }
    // keep only rows some column or the constant term touches
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < c0.size(); ++i) {
      bool used = c0[i] != 0;
      for (std::size_t k = 0; !used && k < columns.size(); ++k) used = columns[k][i] != 0;
      if (used) live.push_back(i);
    }
    std::vector<Real> rhs;
    for (std::size_t i : live) rhs.push_back(-c0[i]);
    for (auto& col : columns) {
      std::vector<Real> packed;
      for (std::size_t i : live) packed.push_back(col[i]);
      col = std::move(packed);
    }
    recurrence::LsqOptions lo;
    lo.rank_tol = opts.tol.rank_tol;
    const auto sol = recurrence::least_squares(columns, {rhs}, lo);
    ep.condition_residual = sol.residual_rel[0];
    ep.conditions_hold = ep.condition_residual < tau;
    ep.recovered.assign(4, std::vector<Real>(n));
    for (int k = 0; k < 4; ++k)
      for (std::size_t m = 0; m < n; ++m) ep.recovered[k][m] = sol.coefficients[0][k * n + m];

    const Real c0n = vnorm(c0);
    const Real cs = vnorm(flatten_all(assemble(N, eval_forms(w, d.point), Reading::corrected())));
    ep.supplied_residual = cs / std::max(c0n, Real(1e-300));
    ep.supplied_hold = cs == 0 || ep.supplied_residual < tau;
    ep.agree = ep.sgk_holds == ep.conditions_hold && (!ep.supplied_hold || ep.sgk_holds);
    rep.agree = rep.agree && ep.agree;
    rep.sgk_hold_count += ep.sgk_holds;
    rep.condition_hold_count += ep.conditions_hold;
    rep.points.push_back(std::move(ep));
  }
  std::ostringstream s;
  s << rep.points.size() << " points, SGK solve holds at " << rep.sgk_hold_count << ", conditions solvable at "
    << rep.condition_hold_count << (rep.agree ? ", agree" : ", DISAGREE");
  rep.summary = s.str();
  return rep;
}

// ---- corollary variants ----

std::string to_string(CorollaryVariant v) {
  switch (v) {
    case CorollaryVariant::K: return "K";
    case CorollaryVariant::HGK: return "HGK";
    case CorollaryVariant::WGK: return "WGK";
    case CorollaryVariant::ProductSGK: return "product-SGK";
    case CorollaryVariant::ProductK: return "product-K";
    case CorollaryVariant::ProductHGK: return "product-HGK";
    case CorollaryVariant::ProductWGK: return "product-WGK";
  }
  return "?";
}

std::optional<CorollaryVariant> parse_corollary_variant(std::string_view s) {
  std::string low(s);
  for (char& ch : low) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (auto v : {CorollaryVariant::K, CorollaryVariant::HGK, CorollaryVariant::WGK, CorollaryVariant::ProductSGK,
                 CorollaryVariant::ProductK, CorollaryVariant::ProductHGK, CorollaryVariant::ProductWGK}) {
    std::string name = to_string(v);
    for (char& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (name == low) return v;
  }
  return std::nullopt;
}

bool is_product(CorollaryVariant v) {
  return v == CorollaryVariant::ProductSGK || v == CorollaryVariant::ProductK || v == CorollaryVariant::ProductHGK ||
         v == CorollaryVariant::ProductWGK;
}

namespace {

/// Which of Φ, Ψ, Θ the variant carries.
std::array<bool, 3> carried(CorollaryVariant v) {
  switch (v) {
    case CorollaryVariant::K:
    case CorollaryVariant::ProductK: return {false, false, false};
    case CorollaryVariant::HGK:
    case CorollaryVariant::ProductHGK: return {false, true, false};
    case CorollaryVariant::WGK:
    case CorollaryVariant::ProductWGK: return {true, false, false};
    case CorollaryVariant::ProductSGK: return {true, true, true};
  }
  return {true, true, true};
}

Reading typeset_reading(CorollaryVariant v) {
  Reading r = Reading::corrected();
  if (v == CorollaryVariant::HGK) {
    r.c2i_p_pi = -1;
    r.c2i_dp = -1;
    r.c2ii_p_pi = -1;
  } else if (v == CorollaryVariant::WGK) {
    r.c2i_p_pi = -1;
    r.c2i_dp = 1;
    r.c2ii_q_phi = 1;
    r.c2ii_p_pi = -1;
  }
  return r;
}

}  // namespace

CorollaryReport check_corollary_variant(const WarpedSpec& spec, CorollaryVariant variant, const FormSet& forms,
                                        const CheckOptions& opts, bool as_printed) {
  if (is_product(variant) && !symexpr::canonicalize(spec.f - Expr(1)).is_zero_constant())
    throw std::invalid_argument("variant " + to_string(variant) + " needs f = 1");
  FormSet z = forms;
  const auto keep = carried(variant);
  const geometry::Chart ch = warped::product_chart(spec);
  if (!keep[0]) z.Phi = OneFormField(ch);
  if (!keep[1]) z.Psi = OneFormField(ch);
  if (!keep[2]) z.Theta = OneFormField(ch);

  CorollaryReport out;
  out.variant = variant;
  out.specialized = check_theorem41(spec, z, Reading::corrected(), opts);

  const Reading rd = as_printed ? typeset_reading(variant) : Reading::corrected();
  const Forms<Expr> w = split_forms(spec, z);
  const Ingredients<Expr> I = symbolic_ingredients(spec);
  const auto points = draw_points(I, w, ch, opts);
  const auto c = assemble(I, w, rd);
  ConditionReport& r = out.conditions;
  r.title = to_string(variant) + " conditions";
  r.reading = as_printed ? "as-printed" : "corrected";
  const std::size_t p = I.p, q = I.q, n = I.n();

  const bool recurrent = variant == CorollaryVariant::K || variant == CorollaryVariant::ProductK;
  for (std::size_t k = 0; k < 8; ++k) {
    const std::string name = kConditionNames[k];
    if (is_product(variant) && k >= 6) continue;  // identically zero when f = 1
    if (variant == CorollaryVariant::ProductK && (k == 4 || k == 5)) continue;
    if (variant == CorollaryVariant::K && k == 3) {
      // split into ∇̃R̃ = Π̃⊗R̃ and PΠ̃ = 0
      Array<Expr> a(n, 5, Expr(0));
      Array<Expr> b(n, 1, Expr(0));
      for (std::size_t e = 0; e < q; ++e) {
        b(p + e) = I.P * w[0][p + e];
        for (std::size_t i = 0; i < q * q * q * q; ++i) {
          const std::size_t al = i / (q * q * q), be = (i / (q * q)) % q, ga = (i / q) % q, de = i % q;
          a(p + al, p + be, p + ga, p + de, p + e) =
              I.dRf(al, be, ga, de, e) - w[0][p + e] * I.Rf(al, be, ga, de);
        }
      }
      r.conditions.push_back(evaluate_condition("C2.ii", "∇̃R̃ = Π̃⊗R̃", a, ch, points, opts));
      r.conditions.push_back(evaluate_condition("C2.ii*", "PΠ̃ = 0", b, ch, points, opts));
      continue;
    }
    if (recurrent && (k == 4 || k == 5)) {
      // ∇̄T = Π̄⊗T and Π̃⊗T = 0
      Array<Expr> a(p, 3, Expr(0)), b(n, 3, Expr(0));
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
          if (k == 4)
            for (std::size_t e = 0; e < p; ++e) a(i, j, e) = I.dT(i, j, e) - w[0][e] * I.Tb(i, j);
          else
            for (std::size_t e = 0; e < q; ++e) b(i, j, p + e) = w[0][p + e] * I.Tb(i, j);
        }
      r.conditions.push_back(evaluate_condition(name, k == 4 ? "∇̄T = Π̄⊗T" : "Π̃⊗T = 0",
                                                k == 4 ? pad_to_product(a, n) : b, ch, points, opts));
      continue;
    }
    r.conditions.push_back(evaluate_condition(name, statement(k, rd), c[k], ch, points, opts));
  }
  if (as_printed && variant == CorollaryVariant::WGK)
    r.notes.push_back("C3.ii is typeset with S̃ in a base slot; evaluated with S̄");
  finish(r);
  out.coherent = out.conditions.overall == out.specialized.overall;
  return out;
}

// ---- consequences ----

const Consequence* ConsequenceReport::find(const std::string& name) const {
  for (const auto& c : items)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

Real norm_v(const std::vector<Real>& v) { return vnorm(v); }

struct Tally {
  Consequence c;
  Tally(std::string name, std::string region) {
    c.name = std::move(name);
    c.region = std::move(region);
  }
  void add(Real residual, Real tau) {
    ++c.region_points;
    c.max_residual = std::max(c.max_residual, residual);
    c.verdict = c.max_residual < tau ? Verdict::Holds : Verdict::Fails;
  }
};

Array<Real> fiber_weyl(const Ingredients<Real>& N) {
  const std::size_t q = N.q;
  Array<Real> C(q, 4, Real(0));
  if (q < 3) return C;
  const Real a = Real(1) / Real(static_cast<int>(q - 2));
  const Real b = N.kappa_f / Real(static_cast<int>(2 * (q - 1) * (q - 2)));
  for (std::size_t k = 0; k < C.size(); ++k) C.at_flat(k) = N.Rf.at_flat(k) - a * N.gSf.at_flat(k) + b * N.ggf.at_flat(k);
  return C;
}

/// ∇̃R̃ - (π⊗R̃ + φ⊗S̃∧S̃ + ψ⊗g̃∧S̃ + θ⊗g̃∧g̃) with fiber-indexed forms.
Real fiber_sgk_residual(const Ingredients<Real>& N, const Forms<Real>& u) {
  const std::size_t q = N.q;
  Real s = 0;
  for (std::size_t i = 0; i < q * q * q * q; ++i)
    for (std::size_t e = 0; e < q; ++e) {
      const Real r = N.dRf.at_flat(i * q + e) - (u[0][e] * N.Rf.at_flat(i) + u[1][e] * N.SSf.at_flat(i) +
                                                 u[2][e] * N.gSf.at_flat(i) + u[3][e] * N.ggf.at_flat(i));
      s += r * r;
    }
  return sqrt(s) / std::max(Real(1), frob(N.dRf));
}

}  // namespace

ConsequenceReport corollary_consequence_report(const WarpedSpec& spec, const FormSet& forms,
                                               const CheckOptions& opts) {
  const Forms<Expr> w = split_forms(spec, forms);
  const Ingredients<Expr> I = symbolic_ingredients(spec);
  const geometry::Chart ch = warped::product_chart(spec);
  const std::size_t p = I.p, q = I.q, n = I.n();
  const Real tau = opts.tol.tau_rel, tiny = opts.tol.tau_abs;

  Tally roter{"fiber-roter", "df + fΠ̄ ≠ 0"}, einstein{"fiber-einstein", "2(κ̄ - (n-p)trT)Φ + pΨ ≠ 0"},
      constcurv{"fiber-constant-curvature", "df ≠ 0"},
      weylflat{"fiber-conformally-flat", "df + fΠ̄ ≠ 0 with Φ = Θ = 0"},
      fsgk{"fiber-sgk", "everywhere"}, trec{"T-recurrent", "Φ = Ψ = Θ = 0"},
      flatbase{"base-flat-where-fiber-pi", "Π̃ ≠ 0 with Φ = Ψ = Θ = 0"};

  ConsequenceReport rep;
  const std::vector<std::string> cand_names = {"corrected", "printed-general", "printed-weak"};
  std::vector<Real> cand_res(3, Real(0));
  bool first = true;
  for (const Point& pt : draw_points(I, w, ch, opts)) {
    const auto N = numeric_ingredients(I, pt);
    const auto u = eval_forms(w, pt);
    auto base_part = [&](int k) { return std::vector<Real>(u[k].begin(), u[k].begin() + p); };
    auto fiber_part = [&](int k) { return std::vector<Real>(u[k].begin() + p, u[k].end()); };

    std::vector<Real> dfpi(p);
    for (std::size_t a = 0; a < p; ++a) dfpi[a] = N.df[a] + N.f * u[0][a];
    const bool on_dfpi = norm_v(dfpi) > tiny;
    if (on_dfpi) {
      const auto d = recurrence::roter_decompose(N.Rf, N.gf, N.Sf, nullptr, opts.tol);
      roter.add(d.residual, tau);
    }

    std::vector<Real> ein(n);
    for (std::size_t i = 0; i < n; ++i)
      ein[i] = Real(2) * (N.kappa_b - Real(static_cast<int>(q)) * N.trT) * u[1][i] + Real(static_cast<int>(p)) * u[2][i];
    if (norm_v(ein) > tiny) {
      Array<Real> dev = N.Sf;
      for (std::size_t k = 0; k < dev.size(); ++k)
        dev.at_flat(k) -= N.kappa_f / Real(static_cast<int>(q)) * N.gf.at_flat(k);
      einstein.add(frob(dev) / std::max(Real(1), frob(N.Sf)), tau);
    }

    if (norm_v(N.df) > tiny) {
      Array<Real> dev = N.Rf;
      if (q >= 2)
        for (std::size_t k = 0; k < dev.size(); ++k)
          dev.at_flat(k) -= N.kappa_f / Real(static_cast<int>(2 * q * (q - 1))) * N.ggf.at_flat(k);
      constcurv.add(frob(dev) / std::max(Real(1), frob(N.Rf)), tau);
    }

    if (on_dfpi && norm_v(u[1]) <= tiny && norm_v(u[3]) <= tiny)
      weylflat.add(frob(fiber_weyl(N)) / std::max(Real(1), frob(N.Rf)), tau);

    // fiber forms predicted by the fiber-curvature conditions
    {
      const auto pi = fiber_part(0), phi = fiber_part(1), psi = fiber_part(2), th = fiber_part(3);
      std::array<Forms<Real>, 3> cands;
      for (auto& c : cands)
        for (auto& v : c) v.assign(q, Real(0));
      for (std::size_t e = 0; e < q; ++e) {
        const Real fP = N.f * N.P, Q = N.Q, f = N.f;
        cands[0][0][e] = pi[e];
        cands[0][1][e] = phi[e] / f;
        cands[0][2][e] = Real(2) * Q * phi[e] / f + psi[e];
        cands[0][3][e] = fP * pi[e] / 2 + Q * Q * phi[e] / f + Q * psi[e] + f * th[e];
        cands[1][0][e] = pi[e];
        cands[1][1][e] = phi[e] / f;
        cands[1][2][e] = Q * phi[e] / f + psi[e];
        cands[1][3][e] = -fP * pi[e] / 2 + Q * Q * phi[e] / f + Q * psi[e] + f * th[e];
        cands[2][0][e] = pi[e];
        cands[2][1][e] = phi[e];
        cands[2][2][e] = Q / f * psi[e];
        cands[2][3][e] = -fP * pi[e] / 2 + Q * Q * phi[e] / f;
      }
      for (int k = 0; k < 3; ++k) cand_res[k] = std::max(cand_res[k], fiber_sgk_residual(N, cands[k]));
      fsgk.add(fiber_sgk_residual(N, cands[0]), tau);
      if (first) {
        const auto sol = recurrence::solve_pointwise_coefficients(
            N.dRf, {N.Rf, N.SSf, N.gSf, N.ggf}, {}, opts.tol);
        rep.fiber_forms = sol.coefficients;
        first = false;
      }
    }

    const bool k_type = norm_v(u[1]) <= tiny && norm_v(u[2]) <= tiny && norm_v(u[3]) <= tiny;
    if (k_type) {
      Real s = 0;
      const auto pib = base_part(0);
      for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b)
          for (std::size_t e = 0; e < p; ++e) {
            const Real r = N.dT(a, b, e) - pib[e] * N.Tb(a, b);
            s += r * r;
          }
      trec.add(sqrt(s) / std::max(Real(1), frob(N.dT)), tau);
      if (norm_v(fiber_part(0)) > tiny) flatbase.add(frob(N.Rb) + frob(N.Tb) + abs(N.P), opts.tol.tau_abs);
    }
  }
  for (int k = 0; k < 3; ++k) rep.fiber_form_candidates.emplace_back(cand_names[k], cand_res[k]);
  for (Tally* t : {&roter, &einstein, &constcurv, &weylflat, &fsgk, &trec, &flatbase}) {
    if (t->c.region_points == 0) t->c.detail = "no sample point in the region";
    rep.items.push_back(t->c);
  }
  return rep;
}

geometry::TensorField weyl(const Curvature& c) {
  const std::size_t n = c.dim();
  geometry::TensorField out(c.chart(), Valence::Lower4, SymmetryClass::RiemannType);
  if (n < 3) return out;
  const geometry::TensorField& g = c.g.tensor();
  const auto gS = kulkarni_nomizu(g, c.S);
  const auto gg = kulkarni_nomizu(g, g);
  const Expr a = Expr(1) / Expr(static_cast<int>(n - 2));
  const Expr b = c.kappa / Expr(static_cast<int>(2 * (n - 1) * (n - 2)));
  for (std::size_t k = 0; k < out.components.size(); ++k)
    out.components.at_flat(k) =
        symexpr::canonicalize(c.R.components.at_flat(k) - a * gS.components.at_flat(k) + b * gg.components.at_flat(k));
  return out;
}

}  // namespace warpsgk::theorems
