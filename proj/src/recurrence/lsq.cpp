// The only translation unit that instantiates Eigen on the multiprecision
// type; it is slow to compile, so keep it small.
#include "warpsgk/recurrence/lsq.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>

namespace warpsgk::recurrence {

namespace {

using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

}  // namespace

LsqSolution least_squares(const std::vector<std::vector<Real>>& columns, const std::vector<std::vector<Real>>& rhs,
                          const LsqOptions& opts) {
  LsqSolution out;
  const std::size_t k = columns.size();
  const std::size_t m = rhs.empty() ? (columns.empty() ? 0 : columns[0].size()) : rhs[0].size();
  for (const auto& c : columns)
    if (c.size() != m) throw std::invalid_argument("least_squares: column length mismatch");
  for (const auto& b : rhs)
    if (b.size() != m) throw std::invalid_argument("least_squares: right-hand side length mismatch");

  auto vnorm = [](const std::vector<Real>& v) {
    Real s = 0;
    for (const Real& x : v) s += x * x;
    return boost::multiprecision::sqrt(s);
  };
  const Real floor = Real(opts.rel_floor);

  if (k == 0) {
    for (const auto& b : rhs) {
      out.coefficients.emplace_back();
      const Real nb = vnorm(b);
      out.residual_abs.push_back(nb);
      out.residual_rel.push_back(nb / std::max(nb, floor));
    }
    return out;
  }

  Mat A(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = columns[j][i];

  Eigen::JacobiSVD<Mat, Eigen::ColPivHouseholderQRPreconditioner> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& sv = svd.singularValues();
  const Real smax = sv.size() ? sv(0) : Real(0);
  const Real cut = smax * Real(opts.rank_tol);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    out.singular_values.push_back(sv(i));
    if (smax > 0 && sv(i) > cut) ++rank;
  }
  out.rank = rank;

  const Mat& U = svd.matrixU();
  const Mat& V = svd.matrixV();
  for (Eigen::Index j = static_cast<Eigen::Index>(rank); j < V.cols(); ++j) {
    std::vector<Real> z(k);
    for (std::size_t i = 0; i < k; ++i) z[i] = V(static_cast<Eigen::Index>(i), j);
    out.nullspace.push_back(std::move(z));
  }

  for (const auto& bv : rhs) {
    Vec b(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) b(static_cast<Eigen::Index>(i)) = bv[i];
    Vec x = Vec::Zero(static_cast<Eigen::Index>(k));
    for (std::size_t r = 0; r < rank; ++r) {
      const auto ri = static_cast<Eigen::Index>(r);
      const Real coef = U.col(ri).dot(b) / sv(ri);
      x += coef * V.col(ri);
    }
    const Vec res = b - A * x;
    Real ra = 0;
    for (Eigen::Index i = 0; i < res.size(); ++i) ra += res(i) * res(i);
    ra = boost::multiprecision::sqrt(ra);
    const Real nb = vnorm(bv);
    std::vector<Real> xs(k);
    for (std::size_t i = 0; i < k; ++i) xs[i] = x(static_cast<Eigen::Index>(i));
    out.coefficients.push_back(std::move(xs));
    out.residual_abs.push_back(ra);
    out.residual_rel.push_back(ra / std::max(nb, floor));
  }
  return out;
}

}  // namespace warpsgk::recurrence
