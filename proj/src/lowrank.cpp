#include "vorcell/lowrank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace vorcell {

namespace {

constexpr double kSignEps = 1e-14;

void require_finite(const Matrix& a) {
  if (!a.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
}

// Flip the column so that its first entry that is not negligible is positive.
bool needs_flip(const Eigen::Ref<const Vector>& col) {
  const double scale = col.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    if (std::abs(col[i]) > kSignEps * std::max(scale, 1.0)) return col[i] < 0;
  }
  return false;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0;
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

Membership classify(double free_norm, double radius, double tol) {
  if (free_norm < radius - tol) return Membership::Inside;
  if (free_norm <= radius + tol) return Membership::Boundary;
  return Membership::Outside;
}

}  // namespace

Matrix SVDFactors::reconstruct() const {
  Matrix mid = Matrix::Zero(sigma1.cols(), sigma2.rows());
  for (Eigen::Index i = 0; i < d.size(); ++i) mid(i, i) = d[i];
  return sigma1 * mid * sigma2;
}

SVDFactors svd(const Matrix& a) {
  require_finite(a);
  Eigen::JacobiSVD<Matrix> s(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SVDFactors f{s.matrixU(), s.singularValues(), s.matrixV().transpose()};
  const Eigen::Index k = f.d.size();
  for (Eigen::Index i = 0; i < f.sigma1.cols(); ++i) {
    if (!needs_flip(f.sigma1.col(i))) continue;
    f.sigma1.col(i) *= -1;
    if (i < k) f.sigma2.row(i) *= -1;
  }
  for (Eigen::Index i = k; i < f.sigma2.rows(); ++i) {
    if (needs_flip(f.sigma2.row(i).transpose())) f.sigma2.row(i) *= -1;
  }
  return f;
}

Matrix eckart_young_truncate(const Matrix& u, std::size_t r) {
  const auto k = static_cast<std::size_t>(std::min(u.rows(), u.cols()));
  if (r < 1 || r > k) throw std::invalid_argument("rank " + std::to_string(r) + " out of range");
  SVDFactors f = svd(u);
  for (Eigen::Index i = static_cast<Eigen::Index>(r); i < f.d.size(); ++i) f.d[i] = 0;
  return f.reconstruct();
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Inside:
      return "inside";
    case Membership::Boundary:
      return "boundary";
    case Membership::Outside:
      return "outside";
  }
  return "?";
}

CellMembership cell_membership(const Matrix& u, const Matrix& v, std::size_t r, double tol) {
  require_finite(u);
  if (u.rows() != v.rows() || u.cols() != v.cols()) throw std::invalid_argument("U and V have different shapes");
  const auto k = static_cast<std::size_t>(std::min(v.rows(), v.cols()));
  if (r < 1 || r > k) throw RankMismatch("rank " + std::to_string(r) + " out of range");
  const SVDFactors f = svd(v);
  const auto ri = static_cast<Eigen::Index>(r);
  if (!(f.d[ri - 1] > tol) || (ri < f.d.size() && f.d[ri] > tol)) {
    throw RankMismatch("V does not have rank " + std::to_string(r) + " within tolerance");
  }

  const Matrix a = f.sigma1.transpose() * u * f.sigma2.transpose();
  const Eigen::Index m = a.rows(), n = a.cols();
  CellMembership out;
  out.radius = f.d[ri - 1];
  const Matrix a11 = a.topLeftCorner(ri, ri);
  const Matrix v11 = f.d.head(ri).asDiagonal();
  out.fixed_deviation = std::max({max_abs(a11 - v11), max_abs(a.topRightCorner(ri, n - ri)),
                                  max_abs(a.bottomLeftCorner(m - ri, ri))});
  out.free_block = a.bottomRightCorner(m - ri, n - ri);
  out.free_norm = spectral_norm(out.free_block);
  out.verdict = out.fixed_deviation > tol ? Membership::Outside : classify(out.free_norm, out.radius, tol);
  return out;
}

bool spectral_ball_membership(const Matrix& w, double radius, double tol) {
  if (!(radius > 0)) throw std::invalid_argument("radius must be positive");
  require_finite(w);
  return spectral_norm(w) <= radius + tol;
}

double spectral_boundary_value(const Matrix& w, double radius) {
  const Matrix g = w * w.transpose() - radius * radius * Matrix::Identity(w.rows(), w.rows());
  return g.determinant();
}

CellMembership symmetric_frobenius_membership(const Matrix& v, const Matrix& u, double tol,
                                              std::optional<std::size_t> expected_rank) {
  require_finite(u);
  require_finite(v);
  if (v.rows() != v.cols() || u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("expected square matrices of the same size");
  }
  if (max_abs(v - v.transpose()) > tol || max_abs(u - u.transpose()) > tol) {
    throw std::invalid_argument("matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(v);
  const Vector& lam = es.eigenvalues();
  const Eigen::Index n = v.rows();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return std::abs(lam[a]) > std::abs(lam[b]); });

  Eigen::Index r = 0;
  while (r < n && std::abs(lam[idx[static_cast<std::size_t>(r)]]) > tol) ++r;
  if (r == 0) throw RankMismatch("V is zero");
  if (expected_rank && static_cast<std::size_t>(r) != *expected_rank) {
    throw RankMismatch("V has rank " + std::to_string(r) + ", expected " + std::to_string(*expected_rank));
  }

  Matrix q(n, n);
  Vector top(r);
  for (Eigen::Index i = 0; i < n; ++i) q.col(i) = es.eigenvectors().col(idx[static_cast<std::size_t>(i)]);
  for (Eigen::Index i = 0; i < r; ++i) top[i] = lam[idx[static_cast<std::size_t>(i)]];

  const Matrix a = q.transpose() * u * q;
  CellMembership out;
  out.radius = std::abs(top[r - 1]);
  const Matrix v11 = top.asDiagonal();
  out.fixed_deviation = std::max(max_abs(a.topLeftCorner(r, r) - v11), max_abs(a.topRightCorner(r, n - r)));
  out.free_block = a.bottomRightCorner(n - r, n - r);
  if (out.free_block.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> fs(out.free_block, Eigen::EigenvaluesOnly);
    out.free_norm = fs.eigenvalues().cwiseAbs().maxCoeff();
  }
  out.verdict = out.fixed_deviation > tol ? Membership::Outside : classify(out.free_norm, out.radius, tol);
  return out;
}

}  // namespace vorcell
