#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>

#include <Eigen/Dense>

namespace vorcell {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kLowrankTol = 1e-9;

class RankMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// U = sigma1 * diag(d) * sigma2 with sigma1 (m x m) and sigma2 (n x n) orthogonal.
/// Singular values descend; the first nonzero entry of each column of sigma1 is positive.
struct SVDFactors {
  Matrix sigma1;
  Vector d;
  Matrix sigma2;

  Matrix reconstruct() const;
};

SVDFactors svd(const Matrix& a);

/// Nearest matrix of rank <= r in Frobenius and spectral norm.
Matrix eckart_young_truncate(const Matrix& u, std::size_t r);

enum class Membership { Inside, Boundary, Outside };

std::string_view to_string(Membership m);

/// Verdict plus the quantities it was based on, in V's singular frame.
struct CellMembership {
  Membership verdict = Membership::Outside;
  /// sigma_r(V), or the smallest nonzero |eigenvalue| in the symmetric case.
  double radius = 0;
  /// Spectral norm of the free block, or its largest |eigenvalue|.
  double free_norm = 0;
  /// Largest deviation on the fixed blocks: |U11 - V11|, |U12|, |U21|.
  double fixed_deviation = 0;
  Matrix free_block;
};

/// Is V the nearest rank-r matrix to U? Throws RankMismatch unless
/// sigma_r(V) > tol >= sigma_{r+1}(V).
CellMembership cell_membership(const Matrix& u, const Matrix& v, std::size_t r, double tol = kLowrankTol);

/// sigma_max(W) <= radius + tol.
bool spectral_ball_membership(const Matrix& w, double radius, double tol = kLowrankTol);

/// det(W W^T - radius^2 I): vanishes on the boundary of the spectral ball.
double spectral_boundary_value(const Matrix& w, double radius = 1.0);

/// Symmetric matrices with the Frobenius norm. The rank of V is the number of
/// eigenvalues above tol in absolute value; `expected_rank` makes a mismatch an error.
CellMembership symmetric_frobenius_membership(const Matrix& v, const Matrix& u, double tol = kLowrankTol,
                                              std::optional<std::size_t> expected_rank = {});

}  // namespace vorcell
