#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "vorcell/lowrank.hpp"
#include "vorcell/polynomial.hpp"

namespace vorcell {

using QPolys = std::vector<Polynomial<Rational>>;

inline constexpr double kSdpTol = 1e-7;
inline constexpr int kSdpMaxIterations = 10'000;
inline constexpr std::size_t kMaxLiftSize = 60;

class LiftTooLarge : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Constant Hessian of a polynomial of degree <= 2.
Matrix hessian(const Polynomial<Rational>& f);

/// n x m matrix of partials df_j/dx_i at a point.
Matrix jacobian_at(const QPolys& f, const std::vector<double>& x);

double evaluate_double(const Polynomial<Rational>& f, const std::vector<double>& x);

/// Find lambda with sum lambda_i B_i <= C subject to E lambda = e.
struct LMIProblem {
  std::vector<Matrix> b;
  Matrix c;
  Matrix e;
  Vector rhs;
  double tol = kSdpTol;
  int max_iterations = kSdpMaxIterations;
};

enum class LMIStatus { Feasible, Infeasible, Inconclusive };

struct LMIResult {
  LMIStatus status = LMIStatus::Inconclusive;
  /// Best point found; a witness when feasible.
  Vector lambda;
  /// lambda_max(sum lambda_i B_i - C) at the best point.
  double phi = 0;
  int iterations = 0;
  /// E lambda = e has no solution.
  bool equality_inconsistent = false;
};

/// Minimizes lambda_max(sum lambda_i B_i - C) over the affine set with a
/// subgradient method using Polyak steps towards an adaptive target level.
LMIResult lmi_feasible(const LMIProblem& p);

enum class SdpStatus { Member, NonMember, Inconclusive };

std::string_view to_string(LMIStatus s);
std::string_view to_string(SdpStatus s);

struct SdpMembership {
  SdpStatus status = SdpStatus::Inconclusive;
  LMIResult lmi;
};

/// u in y - 1/2 Jac_f(y) S_f with S_f = {lambda : sum lambda_i A_i <= 2 I}.
SdpMembership level1_membership(const QPolys& f, const std::vector<double>& y, const std::vector<double>& u,
                                double tol = kSdpTol);

/// Exact quadratic form in z_0 = 1, z_1..z_N: coefficient of z_a z_b for a <= b,
/// with index -1 standing for z_0.
struct LiftedQuadric {
  std::map<std::pair<int, int>, Rational> terms;

  void add(int a, int b, const Rational& c);
  Rational evaluate(const std::vector<Rational>& z) const;
  Vector gradient(const std::vector<double>& z) const;
  Matrix hessian(std::size_t big_n) const;
  /// q(nu_d(x)) as a polynomial in x.
  Polynomial<Rational> pullback(const std::vector<Monomial>& index, const RingPtr& x_ring) const;
};

struct VeroneseLift {
  std::size_t n = 0;
  unsigned d = 0;
  /// Exponents of z_1..z_N; the first n are x_1..x_n.
  std::vector<Monomial> index;
  /// Lifted f_i first, then the relations z_a z_b - z_c z_d.
  std::vector<LiftedQuadric> quadrics;
  std::size_t lifted_count = 0;
  std::vector<Matrix> hessians;

  std::size_t size() const { return index.size(); }
  std::vector<double> embed(const std::vector<double>& x) const;
  /// N x |q| Jacobian of the quadrics at nu_d(y).
  Matrix jacobian(const std::vector<double>& y) const;
};

/// Throws when some f_i has degree above 2d or N exceeds kMaxLiftSize.
VeroneseLift veronese_lift(const QPolys& f, unsigned d);

SdpMembership leveld_membership(const QPolys& f, const std::vector<double>& y, const std::vector<double>& u,
                                unsigned d, double tol = kSdpTol);
SdpMembership leveld_membership(const VeroneseLift& lift, const std::vector<double>& y,
                                const std::vector<double>& u, double tol = kSdpTol);

}  // namespace vorcell
