#include "warpsgk/warped/warped.hpp"

#include "warpsgk/knproducts/knproducts.hpp"
#include "warpsgk/symexpr/sampling.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace warpsgk::warped {

using geometry::SymmetryClass;
using geometry::Valence;
using knproducts::kulkarni_nomizu;
using symexpr::ZeroVerdict;

namespace {

using Index4 = std::array<std::size_t, 4>;

/// The eight images of a 4-index tuple under the curvature symmetries.
std::array<std::pair<Index4, int>, 8> images(const Index4& x) {
  const auto [i, j, k, l] = x;
  return {{{{i, j, k, l}, 1},
           {{j, i, k, l}, -1},
           {{i, j, l, k}, -1},
           {{j, i, l, k}, 1},
           {{k, l, i, j}, 1},
           {{l, k, i, j}, -1},
           {{k, l, j, i}, -1},
           {{l, k, j, i}, 1}}};
}

/// An image of x whose base/fiber pattern equals `want` (true = base).
std::optional<std::pair<Index4, int>> align(const Index4& x, std::size_t p, const std::array<bool, 4>& want) {
  for (const auto& [y, sign] : images(x)) {
    bool ok = true;
    for (std::size_t r = 0; r < 4; ++r) ok = ok && ((y[r] < p) == want[r]);
    if (ok) return std::make_pair(y, sign);
  }
  return std::nullopt;
}

std::size_t base_count(const Index4& x, std::size_t p) {
  return static_cast<std::size_t>(std::count_if(x.begin(), x.end(), [&](std::size_t i) { return i < p; }));
}

Expr signed_expr(int sign, const Expr& e) { return sign > 0 ? e : -e; }

void require_disjoint(const WarpedSpec& s) {
  for (const auto& name : s.fiber.chart().names())
    if (s.base.chart().index_of(name))
      throw std::invalid_argument("coordinate '" + name + "' appears in both base and fiber");
}

/// Everything the block formulas are assembled from.
struct Pieces {
  std::size_t p = 0, q = 0, n = 0;
  Chart chart;
  Curvature base, fiber;
  WarpedAux aux;
  Expr f;
  TensorField gg_b, gS_b, gT_b, SS_b, ST_b, TT_b;  // base Kulkarni–Nomizu products
  TensorField gg_f, gS_f, SS_f;                   // fiber

  explicit Pieces(const WarpedSpec& s)
      : p(s.base.dim()),
        q(s.fiber.dim()),
        n(p + q),
        chart(product_chart(s)),
        base(s.base),
        fiber(s.fiber),
        aux(warped_auxiliaries(s)),
        f(symexpr::canonicalize(s.f)) {
    const TensorField& gb = s.base.tensor();
    gg_b = kulkarni_nomizu(gb, gb);
    gS_b = kulkarni_nomizu(gb, base.S);
    gT_b = kulkarni_nomizu(gb, aux.T);
    SS_b = kulkarni_nomizu(base.S, base.S);
    ST_b = kulkarni_nomizu(base.S, aux.T);
    TT_b = kulkarni_nomizu(aux.T, aux.T);
    const TensorField& gf = s.fiber.tensor();
    gg_f = kulkarni_nomizu(gf, gf);
    gS_f = kulkarni_nomizu(gf, fiber.S);
    SS_f = kulkarni_nomizu(fiber.S, fiber.S);
  }

  const Expr& gt(std::size_t a, std::size_t b) const { return fiber.g(a - p, b - p); }
  const Expr& gbar(std::size_t a, std::size_t b) const { return base.g(a, b); }
  /// G̃ = ½ g̃∧g̃ on product indices.
  Expr Gt(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return gt(a, d) * gt(b, c) - gt(a, c) * gt(b, d);
  }
  Expr m() const { return Expr(static_cast<int>(q)); }
};

TensorField tensor4(const Chart& ch) { return TensorField(ch, Valence::Lower4, SymmetryClass::RiemannType); }

/// Fills a curvature-type tensor from a block rule evaluated on the fundamental domain.
template <class Rule>
TensorField assemble4(const Pieces& P, Rule rule) {
  TensorField out = tensor4(P.chart);
  for (const auto& v : geometry::fundamental_domain(SymmetryClass::RiemannType, P.n, 4)) {
    const Index4 x{v[0], v[1], v[2], v[3]};
    out(x[0], x[1], x[2], x[3]) = rule(x);
  }
  geometry::fill_by_symmetry(out);
  return out;
}

/// Rule for tensors with only BBBB, BFBF and FFFF blocks.
template <class Base, class Mixed, class Fiber>
Expr three_blocks(const Pieces& P, const Index4& x, Base bb, Mixed mixed, Fiber ff) {
  const std::size_t nb = base_count(x, P.p);
  if (nb == 4) return bb(x);
  if (nb == 0) return ff(Index4{x[0] - P.p, x[1] - P.p, x[2] - P.p, x[3] - P.p});
  if (nb == 2)
    if (auto y = align(x, P.p, {true, false, true, false}))
      return signed_expr(y->second, mixed(y->first[0], y->first[1], y->first[2], y->first[3]));
  return Expr(0);
}

Expr at(const TensorField& t, const Index4& x) { return t(x[0], x[1], x[2], x[3]); }

std::string pattern(std::size_t p, const std::vector<std::size_t>& idx, std::size_t split) {
  std::string s;
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (r == split) s += ',';
    s += idx[r] < p ? 'B' : 'F';
  }
  return s;
}

}  // namespace

std::string to_string(FormulaVariant v) { return v == FormulaVariant::Corrected ? "corrected" : "as-printed"; }

Chart product_chart(const WarpedSpec& spec) {
  require_disjoint(spec);
  return Chart::product(spec.base.chart(), spec.fiber.chart());
}

void validate(const WarpedSpec& spec, std::size_t samples, std::uint64_t seed) {
  require_disjoint(spec);
  const Expr f = symexpr::canonicalize(spec.f);
  for (int sym : symexpr::free_symbols(f))
    if (!spec.base.chart().index_of_symbol(sym))
      throw std::invalid_argument("warping function depends on '" + symexpr::symbol_name(sym) +
                                  "', which is not a base coordinate");
  if (f.is_zero_constant()) throw std::domain_error("warping function is identically zero");
  symexpr::SampleBox box(spec.base.chart(), seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Point pt = box.next();
    Real v;
    try {
      v = symexpr::evaluate(f, pt);
    } catch (const symexpr::SingularPoint&) {
      continue;
    }
    if (v <= 0) throw std::domain_error("warping function is not positive at " + pt.str());
  }
}

MetricField build_warped(const WarpedSpec& spec) {
  validate(spec);
  const Chart ch = product_chart(spec);
  const std::size_t p = spec.base.dim(), n = ch.dim();
  const Expr f = symexpr::canonicalize(spec.f);
  geometry::Array<Expr> g(n, 2, Expr(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i < p && j < p) g(i, j) = spec.base(i, j);
      else if (i >= p && j >= p) g(i, j) = f * spec.fiber(i - p, j - p);
    }
  return MetricField(ch, g);
}

WarpedAux warped_auxiliaries(const WarpedSpec& spec) {
  require_disjoint(spec);
  const MetricField& gb = spec.base;
  const Chart& ch = gb.chart();
  const std::size_t p = gb.dim();
  const std::size_t q = spec.fiber.dim();
  const Expr f = symexpr::canonicalize(spec.f);
  const TensorField gamma = geometry::christoffel(gb);
  const TensorField& ginv = gb.inverse();

  WarpedAux a;
  a.df = OneFormField(ch);
  for (std::size_t i = 0; i < p; ++i) a.df[i] = symexpr::differentiate(f, ch.symbol(i));
  a.df_up = OneFormField(ch);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) a.df_up[i] += ginv(i, j) * a.df[j];

  const Expr two_f = Expr(2) * f;
  a.T = TensorField(ch, Valence::Lower2, SymmetryClass::SymmetricPair);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      Expr hess = symexpr::differentiate(a.df[i], ch.symbol(j));
      for (std::size_t c = 0; c < p; ++c) hess -= gamma(c, j, i) * a.df[c];
      a.T(i, j) = -(hess - a.df[i] * a.df[j] / two_f) / two_f;
      a.T(j, i) = a.T(i, j);
    }

  a.trT = Expr(0);
  Expr norm2(0);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      a.trT += ginv(i, j) * a.T(i, j);
      norm2 += ginv(i, j) * a.df[i] * a.df[j];
    }
  a.P = norm2 / (Expr(4) * f * f);
  a.Q = f * (Expr(static_cast<int>(q) - 1) * a.P - a.trT);
  a.dP = OneFormField(ch);
  for (std::size_t i = 0; i < p; ++i) a.dP[i] = symexpr::differentiate(a.P, ch.symbol(i));
  a.nabla_T = geometry::covariant_derivative(a.T, gamma);
  return a;
}

WarpedPrediction predict_components(const WarpedSpec& spec, FormulaVariant variant) {
  validate(spec);
  const Pieces P(spec);
  const bool printed = variant == FormulaVariant::AsPrinted;
  const std::size_t p = P.p, n = P.n;
  const Expr& f = P.f;
  const WarpedAux& A = P.aux;
  const Expr m = P.m();
  const Expr f2 = f * f;
  WarpedPrediction out;

  out.R = assemble4(P, [&](const Index4& x) {
    return three_blocks(
        P, x, [&](const Index4& y) { return at(P.base.R, y); },
        [&](std::size_t a, std::size_t al, std::size_t b, std::size_t be) { return f * A.T(a, b) * P.gt(al, be); },
        [&](const Index4& y) {
          const Expr g = f2 * A.P * P.Gt(y[0] + p, y[1] + p, y[2] + p, y[3] + p);
          return f * at(P.fiber.R, y) + (printed ? -g : g);
        });
  });

  out.S = TensorField(P.chart, Valence::Lower2, SymmetryClass::SymmetricPair);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i < p && j < p) out.S(i, j) = P.base.S(i, j) - m * A.T(i, j);
      else if (i >= p && j >= p) out.S(i, j) = P.fiber.S(i - p, j - p) + A.Q * P.gt(i, j);
    }

  const Expr bracket = m * ((m - Expr(1)) * A.P - Expr(2) * A.trT);
  out.kappa = P.base.kappa + P.fiber.kappa / f + (printed ? -bracket : bracket);

  out.gg = assemble4(P, [&](const Index4& x) {
    return three_blocks(
        P, x, [&](const Index4& y) { return at(P.gg_b, y); },
        [&](std::size_t a, std::size_t al, std::size_t b, std::size_t be) {
          return Expr(-2) * f * P.gbar(a, b) * P.gt(al, be);
        },
        [&](const Index4& y) { return f2 * at(P.gg_f, y); });
  });

  out.gS = assemble4(P, [&](const Index4& x) {
    return three_blocks(
        P, x, [&](const Index4& y) { return at(P.gS_b, y) - m * at(P.gT_b, y); },
        [&](std::size_t a, std::size_t al, std::size_t b, std::size_t be) {
          const Expr sf = P.fiber.S(al - p, be - p) + A.Q * P.gt(al, be);
          const Expr sb = P.base.S(a, b) - m * A.T(a, b);
          return -P.gbar(a, b) * sf - f * P.gt(al, be) * sb;
        },
        [&](const Index4& y) { return f * at(P.gS_f, y) + f * A.Q * at(P.gg_f, y); });
  });

  out.SS = assemble4(P, [&](const Index4& x) {
    return three_blocks(
        P, x,
        [&](const Index4& y) {
          const Expr k = printed ? m : Expr(2) * m;
          return at(P.SS_b, y) - k * at(P.ST_b, y) + m * m * at(P.TT_b, y);
        },
        [&](std::size_t a, std::size_t al, std::size_t b, std::size_t be) {
          const Expr sf = P.fiber.S(al - p, be - p) + A.Q * P.gt(al, be);
          const Expr sb = P.base.S(a, b) - m * A.T(a, b);
          return Expr(-2) * sf * sb;
        },
        [&](const Index4& y) {
          const Expr k = printed ? A.Q : Expr(2) * A.Q;
          return at(P.SS_f, y) + k * at(P.gS_f, y) + A.Q * A.Q * at(P.gg_f, y);
        });
  });

  // ∇R: R_ijkl,m with the derivative index last
  out.nabla_R = TensorField(P.chart, Valence::Lower5, SymmetryClass::RiemannType);
  for (const auto& v : geometry::fundamental_domain(SymmetryClass::RiemannType, n, 4)) {
    const Index4 x{v[0], v[1], v[2], v[3]};
    const std::size_t nb = base_count(x, p);
    for (std::size_t e = 0; e < n; ++e) {
      const bool eb = e < p;
      Expr val(0);
      if (nb == 4 && eb) {
        val = P.base.nabla_R(x[0], x[1], x[2], x[3], e);
      } else if (nb == 0) {
        const Index4 y{x[0] - p, x[1] - p, x[2] - p, x[3] - p};
        if (eb)
          val = -A.df[e] * at(P.fiber.R, y) + f2 * A.dP[e] * P.Gt(x[0], x[1], x[2], x[3]);
        else
          val = f * P.fiber.nabla_R(y[0], y[1], y[2], y[3], e - p);
      } else if (nb == 2 && eb) {
        if (auto y = align(x, p, {true, false, true, false})) {
          const auto& [a, al, b, be] = y->first;
          val = signed_expr(y->second, f * A.nabla_T(a, b, e) * P.gt(al, be));
        }
      } else if (nb == 3 && !eb) {
        if (auto y = align(x, p, {true, true, true, false})) {
          const auto& [a, b, c, de] = y->first;
          Expr s = A.df[a] * A.T(b, c) - A.df[b] * A.T(a, c);
          for (std::size_t d = 0; d < p; ++d) s += A.df_up[d] * P.base.R(a, b, c, d);
          val = signed_expr(y->second, s * P.gt(e, de) / Expr(2));
        }
      } else if (nb == 1 && !eb) {
        if (auto y = align(x, p, {false, false, false, true})) {
          const auto& [al, be, ga, d] = y->first;
          const Expr r = P.fiber.R(al - p, be - p, ga - p, e - p);
          val = signed_expr(y->second, -A.df[d] * r / Expr(2) + f2 * A.dP[d] * P.Gt(al, be, ga, e) / Expr(2));
        }
      }
      out.nabla_R(x[0], x[1], x[2], x[3], e) = val;
    }
  }
  geometry::fill_by_symmetry(out.nabla_R);
  return out;
}

std::string block_label(const WarpedSpec& spec, const std::vector<std::size_t>& index) {
  return pattern(spec.base.dim(), index, 4);
}

namespace {

struct Direct {
  TensorField R, S, nabla_R, gg, gS, SS;
  Expr kappa;
};

Direct direct(const WarpedSpec& spec) {
  const Curvature c(build_warped(spec));
  Direct d{c.R, c.S, c.nabla_R, {}, {}, {}, c.kappa};
  d.gg = kulkarni_nomizu(c.g.tensor(), c.g.tensor());
  d.gS = kulkarni_nomizu(c.g.tensor(), c.S);
  d.SS = kulkarni_nomizu(c.S, c.S);
  return d;
}

std::vector<std::pair<std::string, std::pair<TensorField, TensorField>>> pairs(const WarpedPrediction& p,
                                                                               const Direct& d) {
  return {{"R", {p.R, d.R}},   {"S", {p.S, d.S}},   {"nabla_R", {p.nabla_R, d.nabla_R}},
          {"gg", {p.gg, d.gg}}, {"gS", {p.gS, d.gS}}, {"SS", {p.SS, d.SS}}};
}

}  // namespace

CrosscheckReport crosscheck(const WarpedSpec& spec, FormulaVariant variant, const symexpr::SamplingOptions& opts) {
  const WarpedPrediction pred = predict_components(spec, variant);
  const Direct dir = direct(spec);
  CrosscheckReport rep;
  rep.variant = variant;
  auto add = [&](CrosscheckEntry e) {
    if (e.verdict == ZeroVerdict::NonZero) rep.all_zero = false;
    rep.entries.push_back(std::move(e));
  };
  for (const auto& [name, pr] : pairs(pred, dir)) {
    const geometry::TensorZeroReport z = geometry::is_zero(geometry::difference(pr.first, pr.second), opts);
    CrosscheckEntry e;
    e.tensor = name;
    e.verdict = z.verdict;
    e.nonzero_count = z.nonzero_count;
    e.first_index = z.first_nonzero;
    if (!z.first_nonzero.empty()) e.block = block_label(spec, z.first_nonzero);
    e.max_abs = z.max_abs;
    add(std::move(e));
    if (name == "S") {
      const symexpr::ZeroTest zk = symexpr::is_zero(symexpr::canonicalize(pred.kappa - dir.kappa), opts);
      CrosscheckEntry k;
      k.tensor = "kappa";
      k.verdict = zk.verdict;
      k.nonzero_count = zk.verdict == ZeroVerdict::NonZero ? 1 : 0;
      k.max_abs = zk.max_abs;
      add(std::move(k));
    }
  }
  return rep;
}

std::vector<PrintedDiscrepancy> printed_discrepancies(const WarpedSpec& spec, const symexpr::SamplingOptions& opts) {
  const WarpedPrediction pred = predict_components(spec, FormulaVariant::AsPrinted);
  const Direct dir = direct(spec);
  static const std::map<std::pair<std::string, std::string>, std::pair<std::string, std::string>> kText = {
      {{"R", "FFFF"}, {"R_αβγδ = f R̃ - f² P G̃", "R_αβγδ = f R̃ + f² P G̃"}},
      {{"SS", "BBBB"},
       {"(S∧S)_abcd = S̄∧S̄ - (n-p) S̄∧T + (n-p)² T∧T", "(S∧S)_abcd = S̄∧S̄ - 2(n-p) S̄∧T + (n-p)² T∧T"}},
      {{"SS", "FFFF"}, {"(S∧S)_αβγδ = S̃∧S̃ + Q g̃∧S̃ + Q² g̃∧g̃", "(S∧S)_αβγδ = S̃∧S̃ + 2Q g̃∧S̃ + Q² g̃∧g̃"}},
      {{"kappa", "scalar"},
       {"κ = κ̄ + κ̃/f - (n-p)[(n-p-1)P - 2 tr T]", "κ = κ̄ + κ̃/f + (n-p)[(n-p-1)P - 2 tr T]"}},
  };
  std::vector<PrintedDiscrepancy> out;
  auto describe = [&](const std::string& tensor, const std::string& block, std::vector<std::size_t> idx) {
    PrintedDiscrepancy d{tensor, block, std::move(idx), "(unrecognized)", "(see crosscheck)"};
    if (auto it = kText.find({tensor, block}); it != kText.end()) {
      d.printed = it->second.first;
      d.corrected = it->second.second;
    }
    out.push_back(std::move(d));
  };
  for (const auto& [name, pr] : pairs(pred, dir)) {
    const TensorField diff = geometry::difference(pr.first, pr.second);
    std::set<std::string> seen;
    for (std::size_t k = 0; k < diff.components.size(); ++k) {
      const Expr& e = diff.components.at_flat(k);
      if (e.is_zero_constant()) continue;
      const auto idx = diff.components.unflatten(k);
      const std::string block = block_label(spec, idx);
      if (seen.count(block)) continue;
      if (symexpr::is_zero(e, opts).verdict != ZeroVerdict::NonZero) continue;
      seen.insert(block);
      describe(name, block, idx);
    }
    if (name == "S" && symexpr::is_zero(symexpr::canonicalize(pred.kappa - dir.kappa), opts).verdict ==
                           ZeroVerdict::NonZero)
      describe("kappa", "scalar", {});
  }
  return out;
}

}  // namespace warpsgk::warped
