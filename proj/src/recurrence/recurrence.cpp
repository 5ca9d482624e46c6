#include "warpsgk/recurrence/recurrence.hpp"

#include "warpsgk/knproducts/knproducts.hpp"
#include "warpsgk/symexpr/sampling.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace warpsgk::recurrence {

using knproducts::kulkarni_nomizu;

namespace {

struct NameEntry {
  Structure s;
  const char* name;
  const char* short_name;
};

constexpr NameEntry kNames[] = {
    {Structure::K, "K", "k"},
    {Structure::ConcircularRecurrent, "ConcircularRecurrent", "ck"},
    {Structure::GK, "GK", "gk"},
    {Structure::QGK, "QGK", "qgk"},
    {Structure::HGK, "HGK", "hgk"},
    {Structure::WGK, "WGK", "wgk"},
    {Structure::SGK, "SGK", "sgk"},
    {Structure::Roter, "Roter", "rt"},
    {Structure::GeneralizedRoter, "GeneralizedRoter", "grt"},
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

Real sq_norm(const std::vector<Real>& v) {
  Real s = 0;
  for (const Real& x : v) s += x * x;
  return s;
}

Real dot(const std::vector<Real>& a, const std::vector<Real>& b) {
  Real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

NumericTensor scaled(NumericTensor t, const Real& s) {
  for (Real& x : t.data()) x *= s;
  return t;
}

bool has_pointwise_degeneracy(const std::vector<std::vector<Real>>& cols, double rank_tol) {
  std::vector<Real> n2;
  Real biggest = 0;
  for (const auto& c : cols) {
    n2.push_back(sq_norm(c));
    biggest = std::max(biggest, n2.back());
  }
  const Real tol = Real(rank_tol);
  for (const Real& v : n2)
    if (v == 0 || v <= tol * tol * biggest) return true;
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (std::size_t b = a + 1; b < cols.size(); ++b) {
      const Real d = dot(cols[a], cols[b]);
      // sin² of the angle between the two columns
      const Real sin2 = (n2[a] * n2[b] - d * d) / (n2[a] * n2[b]);
      if (sin2 < tol) return true;
    }
  return false;
}

std::string fmt(const Real& x) { return format_real(x, 3); }

struct Sampled {
  std::vector<PointTensors> tensors;
};

Sampled draw(const Curvature& c, const ClassifyOptions& opts, const std::vector<geometry::Expr>* dkappa) {
  Sampled out;
  symexpr::SampleBox box(c.chart(), opts.seed);
  const OneFormField* eta = opts.eta ? &*opts.eta : nullptr;
  std::size_t attempts = 0;
  while (out.tensors.size() < opts.samples) {
    if (attempts++ >= opts.max_attempts)
      throw std::runtime_error("could not find " + std::to_string(opts.samples) + " non-singular sample points in " +
                               std::to_string(opts.max_attempts) + " attempts");
    const Point p = box.next();
    try {
      out.tensors.push_back(evaluate_point(c, p, dkappa, eta));
    } catch (const symexpr::SingularPoint&) {
    }
  }
  return out;
}

bool identically_zero(const TensorField& t) {
  for (const auto& e : t.components.data())
    if (!e.is_zero_constant()) return false;
  return true;
}

void require_derivative(const Curvature& c) {
  if (c.nabla_R.components.size() == 0)
    throw std::invalid_argument("curvature was computed without the covariant derivative of R");
}

}  // namespace

std::string to_string(Structure s) {
  for (const auto& e : kNames)
    if (e.s == s) return e.name;
  return "?";
}

std::optional<Structure> parse_structure(std::string_view name) {
  const std::string l = lower(name);
  for (const auto& e : kNames)
    if (l == e.short_name || l == lower(e.name)) return e.s;
  return std::nullopt;
}

std::vector<std::string> coefficient_names(Structure s) {
  switch (s) {
    case Structure::K:
    case Structure::ConcircularRecurrent:
      return {"Pi"};
    case Structure::GK:
    case Structure::QGK:
      return {"Pi", "Theta"};
    case Structure::HGK:
      return {"Pi", "Psi"};
    case Structure::WGK:
      return {"Pi", "Phi"};
    case Structure::SGK:
      return {"Pi", "Phi", "Psi", "Theta"};
    case Structure::Roter:
      return {"N1", "N2", "N3"};
    case Structure::GeneralizedRoter:
      return {"L1", "L2", "L3", "L4", "L5", "L6"};
  }
  return {};
}

bool is_generalized(Structure s) {
  return s == Structure::GK || s == Structure::QGK || s == Structure::HGK || s == Structure::WGK ||
         s == Structure::SGK;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "Holds";
    case Verdict::HoldsDegenerately:
      return "HoldsDegenerately";
    case Verdict::Fails:
      return "Fails";
    case Verdict::VacuouslyExcluded:
      return "VacuouslyExcluded";
  }
  return "?";
}

PointTensors evaluate_point(const Curvature& c, const Point& p, const std::vector<geometry::Expr>* dkappa,
                            const OneFormField* eta) {
  PointTensors t;
  t.point = p;
  t.g = geometry::evaluate(c.g.tensor(), p);
  t.g_inv = geometry::evaluate(c.g.inverse(), p);
  t.R = geometry::evaluate(c.R, p);
  t.S = geometry::evaluate(c.S, p);
  if (c.nabla_R.components.size()) t.nabla_R = geometry::evaluate(c.nabla_R, p);
  t.kappa = symexpr::evaluate(c.kappa, p);
  if (dkappa)
    for (const auto& e : *dkappa) t.dkappa.push_back(symexpr::evaluate(e, p));
  if (eta) {
    if (!(eta->chart == c.chart())) throw std::invalid_argument("eta is defined on a different chart");
    t.eta = geometry::evaluate(*eta, p);
  }
  return t;
}

std::vector<NumericTensor> basis_at(Structure s, const PointTensors& t) {
  const std::size_t n = t.g.dim();
  const NumericTensor gg = kulkarni_nomizu(t.g, t.g);
  switch (s) {
    case Structure::K:
      return {t.R};
    case Structure::ConcircularRecurrent:
      return {knproducts::axpy(t.R, Real(-t.kappa / Real(2 * n * (n - 1))), gg)};
    case Structure::GK:
      return {t.R, gg};
    case Structure::QGK: {
      if (t.eta.size() != n) throw std::invalid_argument("QGK needs a 1-form eta on the chart");
      const NumericTensor h = knproducts::axpy(t.g, Real(1), knproducts::outer_square(t.eta));
      return {t.R, kulkarni_nomizu(t.g, h)};
    }
    case Structure::HGK:
      return {t.R, kulkarni_nomizu(t.g, t.S)};
    case Structure::WGK:
      return {t.R, kulkarni_nomizu(t.S, t.S)};
    case Structure::SGK:
      return {t.R, kulkarni_nomizu(t.S, t.S), kulkarni_nomizu(t.g, t.S), gg};
    case Structure::Roter:
    case Structure::GeneralizedRoter: {
      std::vector<NumericTensor> b = {gg, scaled(kulkarni_nomizu(t.g, t.S), Real(-1)),
                                      scaled(kulkarni_nomizu(t.S, t.S), Real(-1))};
      if (s == Structure::Roter) return b;
      NumericTensor F(n, 2, Real(0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) F(i, j) += t.S(i, k) * t.g_inv(k, l) * t.S(l, j);
      b.push_back(scaled(kulkarni_nomizu(t.g, F), Real(-1)));
      b.push_back(scaled(kulkarni_nomizu(t.S, F), Real(-1)));
      b.push_back(scaled(kulkarni_nomizu(F, F), Real(-1)));
      return b;
    }
  }
  throw std::logic_error("unhandled structure");
}

NumericTensor target_at(Structure s, const PointTensors& t) {
  const std::size_t n = t.g.dim();
  if (s == Structure::Roter || s == Structure::GeneralizedRoter) return t.R;
  if (t.nabla_R.size() == 0) throw std::invalid_argument("point tensors lack the covariant derivative of R");
  if (s != Structure::ConcircularRecurrent) return t.nabla_R;
  if (t.dkappa.size() != n) throw std::invalid_argument("concircular target needs the gradient of the scalar curvature");
  const NumericTensor gg = kulkarni_nomizu(t.g, t.g);
  NumericTensor out = t.nabla_R;
  const Real c = Real(2 * n * (n - 1));
  for (std::size_t k = 0; k < gg.size(); ++k)
    for (std::size_t m = 0; m < n; ++m) out.at_flat(k * n + m) -= t.dkappa[m] / c * gg.at_flat(k);
  return out;
}

PointwiseSolution solve_pointwise_coefficients(const NumericTensor& target, const std::vector<NumericTensor>& basis,
                                               const std::vector<std::optional<std::vector<Real>>>& fixed,
                                               const Tolerances& tol) {
  if (basis.empty()) throw std::invalid_argument("solve_pointwise_coefficients: empty basis");
  const std::size_t n = target.dim();
  if (target.rank() != 5 && target.rank() != 4)
    throw std::invalid_argument("solve_pointwise_coefficients: target must have rank 4 or 5");
  for (const auto& b : basis)
    if (b.dim() != n || b.rank() != 4) throw std::invalid_argument("solve_pointwise_coefficients: basis shape mismatch");
  if (!fixed.empty() && fixed.size() != basis.size())
    throw std::invalid_argument("solve_pointwise_coefficients: fixed list must match the basis");
  const std::size_t slots = target.rank() == 5 ? n : 1;
  for (const auto& f : fixed)
    if (f && f->size() != slots) throw std::invalid_argument("solve_pointwise_coefficients: fixed values per slot");

  const std::size_t rows = basis[0].size();
  std::vector<std::size_t> free;
  std::vector<std::vector<Real>> cols;
  for (std::size_t b = 0; b < basis.size(); ++b)
    if (fixed.empty() || !fixed[b]) {
      free.push_back(b);
      cols.push_back(basis[b].data());
    }

  std::vector<std::vector<Real>> rhs(slots, std::vector<Real>(rows));
  for (std::size_t m = 0; m < slots; ++m)
    for (std::size_t k = 0; k < rows; ++k) {
      Real v = slots == 1 ? target.at_flat(k) : target.at_flat(k * n + m);
      if (!fixed.empty())
        for (std::size_t b = 0; b < basis.size(); ++b)
          if (fixed[b]) v -= (*fixed[b])[m] * basis[b].at_flat(k);
      rhs[m][k] = v;
    }

  PointwiseSolution out;
  out.coefficients.assign(slots, std::vector<Real>(basis.size(), Real(0)));
  LsqSolution lsq;
  LsqOptions lo;
  lo.rank_tol = tol.rank_tol;
  if (cols.empty()) {
    lsq = least_squares({}, rhs, lo);
  } else {
    lsq = least_squares(cols, rhs, lo);
    out.degenerate = has_pointwise_degeneracy(cols, tol.rank_tol);
  }
  // the relative residual is measured against the original target slice
  for (std::size_t m = 0; m < slots; ++m) {
    for (std::size_t j = 0; j < free.size(); ++j) out.coefficients[m][free[j]] = lsq.coefficients[m][j];
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (!fixed.empty() && fixed[b]) out.coefficients[m][b] = (*fixed[b])[m];
    Real tn = 0;
    for (std::size_t k = 0; k < rows; ++k) {
      const Real v = slots == 1 ? target.at_flat(k) : target.at_flat(k * n + m);
      tn += v * v;
    }
    Real rn = 0;
    for (const Real& v : rhs[m]) rn += v * v;
    // a zero target slice with fixed columns is scaled by the shifted right-hand side
    tn = boost::multiprecision::sqrt(std::max(tn, rn));
    const Real r = lsq.residual_abs[m] / std::max(tn, Real(1e-40));
    out.residuals.push_back(r);
    out.max_residual = std::max(out.max_residual, r);
  }
  out.rank = lsq.rank;
  for (const auto& z : lsq.nullspace) {
    std::vector<Real> full(basis.size(), Real(0));
    for (std::size_t j = 0; j < free.size(); ++j) full[free[j]] = z[j];
    out.nullspace.push_back(std::move(full));
  }
  return out;
}

const StructureResult* ClassificationReport::find(Structure s) const {
  for (const auto& r : results)
    if (r.structure == s) return &r;
  return nullptr;
}

std::vector<Point> sample_points(const Curvature& c, const ClassifyOptions& opts) {
  std::vector<Point> out;
  for (const auto& t : draw(c, opts, nullptr).tensors) out.push_back(t.point);
  return out;
}

ClassificationReport classify(const MetricField& g, std::vector<Structure> structures, const ClassifyOptions& opts) {
  return classify(Curvature(g), std::move(structures), opts);
}

ClassificationReport classify(const Curvature& c, std::vector<Structure> structures, const ClassifyOptions& opts) {
  const std::size_t n = c.dim();
  if (n < 3) throw std::invalid_argument("classification needs n >= 3, got n = " + std::to_string(n));
  std::sort(structures.begin(), structures.end());
  structures.erase(std::unique(structures.begin(), structures.end()), structures.end());
  const bool wants_ck = std::count(structures.begin(), structures.end(), Structure::ConcircularRecurrent) > 0;
  if (std::count(structures.begin(), structures.end(), Structure::QGK) && !opts.eta)
    throw std::invalid_argument("QGK needs a supplied 1-form eta");
  require_derivative(c);

  ClassificationReport rep;
  rep.seed = opts.seed;
  rep.samples = opts.samples;
  rep.tol = opts.tol;
  rep.flat = c.is_flat();

  std::vector<geometry::Expr> dkappa;
  if (wants_ck)
    for (int sym : c.chart().symbols()) dkappa.push_back(symexpr::differentiate(c.kappa, sym));
  const Sampled sampled = draw(c, opts, wants_ck ? &dkappa : nullptr);
  for (const auto& t : sampled.tensors) rep.points.push_back(t.point);

  const Tolerances& tol = opts.tol;
  const Real tau_rel(tol.tau_rel), tau_abs(tol.tau_abs);

  std::vector<PointwiseSolution> k_solutions;
  for (const auto& t : sampled.tensors) k_solutions.push_back(solve_pointwise_coefficients(t.nabla_R, {t.R}, {}, tol));

  for (Structure s : structures) {
    StructureResult res;
    res.structure = s;
    res.coefficient_names = coefficient_names(s);
    if (rep.flat) {
      res.verdict = Verdict::VacuouslyExcluded;
      res.explanation = "metric is flat; the definitions require a non-flat manifold";
      rep.results.push_back(std::move(res));
      continue;
    }
    std::size_t excluded = 0, degenerate = 0, tested = 0;
    std::optional<std::size_t> worst;
    bool first_rank = true;
    for (std::size_t i = 0; i < sampled.tensors.size(); ++i) {
      const PointTensors& t = sampled.tensors[i];
      PointRecord pr;
      pr.index = i;
      pr.point = t.point;
      const NumericTensor target = target_at(s, t);
      if (s == Structure::K) {
        pr.solution = k_solutions[i];
        if (geometry::norm(t.nabla_R) <= tau_abs * std::max(Real(1), geometry::norm(t.R))) {
          pr.excluded = true;
          pr.exclusion = "nabla R = 0";
        }
      } else {
        pr.solution = solve_pointwise_coefficients(target, basis_at(s, t), {}, tol);
        if (is_generalized(s) && k_solutions[i].max_residual < tau_rel) {
          pr.excluded = true;
          pr.exclusion = "nabla R = xi (x) R is solvable (residual " + fmt(k_solutions[i].max_residual) + ")";
        } else if (s == Structure::ConcircularRecurrent &&
                   geometry::norm(target) <= tau_abs * std::max(Real(1), geometry::norm(basis_at(s, t)[0]))) {
          pr.excluded = true;
          pr.exclusion = "nabla W = 0";
        }
      }
      if (pr.excluded) {
        ++excluded;
      } else {
        ++tested;
        if (pr.solution.degenerate) ++degenerate;
        if (!worst || pr.solution.max_residual > res.max_residual) {
          worst = i;
          res.max_residual = pr.solution.max_residual;
        }
        if (first_rank) {
          res.min_rank = res.max_rank = pr.solution.rank;
          first_rank = false;
        }
        res.min_rank = std::min(res.min_rank, pr.solution.rank);
        res.max_rank = std::max(res.max_rank, pr.solution.rank);
      }
      res.points.push_back(std::move(pr));
    }

    const std::size_t nb = res.coefficient_names.size();
    std::ostringstream why;
    if (tested == 0) {
      res.verdict = Verdict::VacuouslyExcluded;
      if (s == Structure::K)
        why << "nabla R = 0 at every sample point";
      else if (s == Structure::ConcircularRecurrent)
        why << "nabla W = 0 at every sample point";
      else
        why << "every sample point satisfies nabla R = xi (x) R and lies outside the defining set";
    } else if (res.max_residual >= tau_rel) {
      res.verdict = Verdict::Fails;
      why << "relative residual " << fmt(res.max_residual) << " at sample " << *worst << " exceeds " << tol.tau_rel;
    } else if (degenerate > 0) {
      res.verdict = Verdict::HoldsDegenerately;
      why << "residual below " << tol.tau_rel << " at " << tested << " points, but the basis is degenerate"
          << " (vanishing or collinear tensors) at " << degenerate << " of them";
    } else {
      res.verdict = Verdict::Holds;
      why << "residual below " << tol.tau_rel << " at " << tested << " points; basis rank " << res.min_rank;
      if (res.max_rank != res.min_rank) why << ".." << res.max_rank;
      if (res.min_rank < nb) why << " of " << nb << " (coefficients are a minimum-norm choice)";
    }
    if (excluded > 0 && tested > 0) why << "; " << excluded << " points excluded";
    res.explanation = why.str();
    rep.results.push_back(std::move(res));
  }
  return rep;
}

OlszakReport olszak_degeneracy_check(const Curvature& c, const ClassifyOptions& opts) {
  require_derivative(c);
  OlszakReport rep;
  if (c.is_flat() || identically_zero(c.nabla_R)) {
    rep.vacuous = true;
    rep.summary = c.is_flat() ? "metric is flat; check is vacuous"
                              : "nabla R = 0 identically: the excluded set is empty and the check is vacuous";
    return rep;
  }
  const Real tau_rel(opts.tol.tau_rel), tau_abs(opts.tol.tau_abs);
  std::size_t solved = 0, failed = 0;
  for (const auto& t : draw(c, opts, nullptr).tensors) {
    OlszakPoint op;
    op.point = t.point;
    const PointwiseSolution sol = solve_pointwise_coefficients(t.nabla_R, basis_at(Structure::GK, t), {}, opts.tol);
    op.gk_residual = sol.max_residual;
    op.gk_solved = sol.max_residual < tau_rel;
    for (const auto& row : sol.coefficients) op.theta.push_back(row[1]);
    if (op.gk_solved) {
      ++solved;
      op.theta_vanishes = std::all_of(op.theta.begin(), op.theta.end(),
                                      [&](const Real& x) { return boost::multiprecision::abs(x) < tau_abs; });
      if (!op.theta_vanishes) rep.consistent = false;
    } else {
      ++failed;
    }
    rep.points.push_back(std::move(op));
  }
  std::ostringstream s;
  if (solved) s << "GK solved at " << solved << " points, Theta " << (rep.consistent ? "= 0" : "!= 0 (violation)");
  if (solved && failed) s << "; ";
  if (failed) s << "GK residual NonZero at " << failed << " points, no Theta assertion";
  rep.summary = s.str();
  return rep;
}

RoterDecomposition roter_decompose(const NumericTensor& D, const NumericTensor& A, const NumericTensor& E,
                                   const NumericTensor* F, const Tolerances& tol) {
  const std::size_t n = D.dim();
  if (D.rank() != 4 || A.rank() != 2 || E.rank() != 2 || A.dim() != n || E.dim() != n ||
      (F && (F->rank() != 2 || F->dim() != n)))
    throw std::invalid_argument("roter_decompose: dimension mismatch");
  std::vector<NumericTensor> basis = {kulkarni_nomizu(A, A), scaled(kulkarni_nomizu(A, E), Real(-1)),
                                      scaled(kulkarni_nomizu(E, E), Real(-1))};
  if (F) {
    basis.push_back(scaled(kulkarni_nomizu(A, *F), Real(-1)));
    basis.push_back(scaled(kulkarni_nomizu(E, *F), Real(-1)));
    basis.push_back(scaled(kulkarni_nomizu(*F, *F), Real(-1)));
  }
  const PointwiseSolution sol = solve_pointwise_coefficients(D, basis, {}, tol);
  RoterDecomposition out;
  out.coefficients = sol.coefficients[0];
  out.residual = sol.max_residual;
  out.rank = sol.rank;
  out.generalized = F != nullptr;
  return out;
}

RoterDecomposition roter_decompose(const TensorField& D, const TensorField& A, const TensorField& E,
                                   const TensorField* F, const Point& p, const Tolerances& tol) {
  if (!(D.chart == A.chart) || !(D.chart == E.chart) || (F && !(F->chart == D.chart)))
    throw std::invalid_argument("roter_decompose: inputs live on different charts");
  const NumericTensor Fv = F ? geometry::evaluate(*F, p) : NumericTensor();
  return roter_decompose(geometry::evaluate(D, p), geometry::evaluate(A, p), geometry::evaluate(E, p),
                         F ? &Fv : nullptr, tol);
}

}  // namespace warpsgk::recurrence
