#include "vorcell/sdp_relax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "vorcell/voronoi.hpp"

namespace vorcell {

namespace {

double max_eig(const Matrix& m, Vector* vec) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Eigen::Index last = m.rows() - 1;
  if (vec) *vec = es.eigenvectors().col(last);
  return es.eigenvalues()[last];
}

void check_on_variety(const QPolys& f, const std::vector<double>& y, double tol) {
  if (f.empty()) throw std::invalid_argument("no equations");
  for (const auto& g : f) {
    if (g.ring()->nvars() != y.size()) throw std::invalid_argument("point has the wrong number of coordinates");
    if (std::abs(evaluate_double(g, y)) > tol) throw PointNotOnVariety();
  }
}

SdpMembership to_membership(LMIResult r) {
  SdpMembership m;
  switch (r.status) {
    case LMIStatus::Feasible:
      m.status = SdpStatus::Member;
      break;
    case LMIStatus::Infeasible:
      m.status = SdpStatus::NonMember;
      break;
    case LMIStatus::Inconclusive:
      m.status = SdpStatus::Inconclusive;
      break;
  }
  m.lmi = std::move(r);
  return m;
}

// A diagonal entry that is zero for every lambda forces its whole row of
// sum lambda_i B_i - C to vanish on the feasible set. Move those rows into the
// equality constraints and drop the index, until no such entry remains.
LMIProblem facially_reduced(const LMIProblem& p) {
  constexpr double eps = 1e-14;
  LMIProblem out = p;
  const auto k = static_cast<Eigen::Index>(p.b.size());
  std::vector<Vector> rows;
  std::vector<double> rhs;
  for (Eigen::Index i = 0; i < p.e.rows(); ++i) {
    rows.push_back(p.e.row(i).transpose());
    rhs.push_back(p.rhs[i]);
  }
  for (bool changed = true; changed && out.c.rows() > 0;) {
    changed = false;
    const Eigen::Index s = out.c.rows();
    for (Eigen::Index j = 0; j < s; ++j) {
      bool zero = std::abs(out.c(j, j)) <= eps;
      for (const auto& b : out.b) zero = zero && std::abs(b(j, j)) <= eps;
      if (!zero) continue;
      for (Eigen::Index c = 0; c < s; ++c) {
        if (c == j) continue;
        Vector row(k);
        for (Eigen::Index i = 0; i < k; ++i) row[i] = out.b[static_cast<std::size_t>(i)](j, c);
        if (row.cwiseAbs().maxCoeff() <= eps && std::abs(out.c(j, c)) <= eps) continue;
        rows.push_back(row);
        rhs.push_back(out.c(j, c));
      }
      std::vector<Eigen::Index> keep;
      for (Eigen::Index c = 0; c < s; ++c) {
        if (c != j) keep.push_back(c);
      }
      out.c = out.c(keep, keep).eval();
      for (auto& b : out.b) b = b(keep, keep).eval();
      changed = true;
      break;
    }
  }
  out.e.resize(static_cast<Eigen::Index>(rows.size()), k);
  out.rhs.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.e.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    out.rhs[static_cast<Eigen::Index>(i)] = rhs[i];
  }
  return out;
}

// Monomials of degree 1..d: by degree, then lex-descending within a degree.
std::vector<Monomial> veronese_index(std::size_t n, unsigned d) {
  std::vector<Monomial> out;
  for (unsigned deg = 1; deg <= d; ++deg) {
    Monomial m(n);
    std::vector<unsigned> e(n, 0);
    // Walk compositions of deg in lex-descending order.
    auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
      if (var + 1 == n) {
        e[var] = left;
        Monomial mm(n);
        for (std::size_t i = 0; i < n; ++i) mm.set(i, e[i]);
        out.push_back(mm);
        return;
      }
      for (unsigned k = left + 1; k-- > 0;) {
        e[var] = k;
        self(self, var + 1, left - k);
      }
    };
    rec(rec, 0, deg);
  }
  return out;
}

}  // namespace

double evaluate_double(const Polynomial<Rational>& f, const std::vector<double>& x) {
  double s = 0;
  for (const auto& t : f.terms()) {
    double v = t.coeff.to_double();
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (unsigned k = 0; k < t.mono[i]; ++k) v *= x[i];
    }
    s += v;
  }
  return s;
}

Matrix hessian(const Polynomial<Rational>& f) {
  if (f.total_degree() > 2) throw std::invalid_argument("hessian needs degree <= 2, got " + f.to_string());
  const std::size_t n = f.ring()->nvars();
  Matrix h = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& t : f.terms()) {
    if (t.mono.degree() != 2) continue;
    std::vector<Eigen::Index> vars;
    for (std::size_t i = 0; i < n; ++i) {
      for (unsigned k = 0; k < t.mono[i]; ++k) vars.push_back(static_cast<Eigen::Index>(i));
    }
    const double c = t.coeff.to_double();
    if (vars[0] == vars[1]) {
      h(vars[0], vars[0]) = 2 * c;
    } else {
      h(vars[0], vars[1]) = c;
      h(vars[1], vars[0]) = c;
    }
  }
  return h;
}

Matrix jacobian_at(const QPolys& f, const std::vector<double>& x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Matrix j(n, static_cast<Eigen::Index>(f.size()));
  for (std::size_t c = 0; c < f.size(); ++c) {
    for (Eigen::Index i = 0; i < n; ++i) {
      j(i, static_cast<Eigen::Index>(c)) = evaluate_double(f[c].partial_derivative(static_cast<std::size_t>(i)), x);
    }
  }
  return j;
}

std::string_view to_string(LMIStatus s) {
  switch (s) {
    case LMIStatus::Feasible:
      return "feasible";
    case LMIStatus::Infeasible:
      return "infeasible";
    case LMIStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string_view to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Member:
      return "member";
    case SdpStatus::NonMember:
      return "non-member";
    case SdpStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

LMIResult lmi_feasible(const LMIProblem& input) {
  const auto k = static_cast<Eigen::Index>(input.b.size());
  for (const auto& b : input.b) {
    if (b.rows() != input.c.rows() || b.cols() != input.c.cols()) {
      throw std::invalid_argument("LMI matrices differ in size");
    }
  }
  if (input.e.rows() > 0 && input.e.cols() != k) throw std::invalid_argument("equality matrix has the wrong width");
  if (input.e.rows() != input.rhs.size()) throw std::invalid_argument("equality right-hand side has the wrong length");

  const LMIProblem p = facially_reduced(input);
  const Eigen::Index s = p.c.rows();
  LMIResult out;
  Vector lambda0 = Vector::Zero(k);
  Matrix z = Matrix::Identity(k, k);
  if (p.e.rows() > 0) {
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(p.e);
    cod.setThreshold(1e-12);
    lambda0 = cod.solve(p.rhs);
    const double scale = std::max(1.0, p.rhs.cwiseAbs().maxCoeff());
    if ((p.e * lambda0 - p.rhs).cwiseAbs().maxCoeff() > 1e-9 * scale) {
      out.status = LMIStatus::Infeasible;
      out.equality_inconsistent = true;
      out.phi = std::numeric_limits<double>::infinity();
      out.lambda = lambda0;
      return out;
    }
    const Eigen::Index rank = cod.rank();
    Eigen::ColPivHouseholderQR<Matrix> qr(p.e.transpose());
    const Matrix q = qr.householderQ() * Matrix::Identity(k, k);
    z = q.rightCols(k - rank);
  }

  Matrix m0 = -p.c;
  for (Eigen::Index i = 0; i < k; ++i) m0 += lambda0[i] * p.b[static_cast<std::size_t>(i)];
  std::vector<Matrix> g(static_cast<std::size_t>(z.cols()), Matrix::Zero(s, s));
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    for (Eigen::Index i = 0; i < k; ++i) {
      if (z(i, j) != 0) g[static_cast<std::size_t>(j)] += z(i, j) * p.b[static_cast<std::size_t>(i)];
    }
  }
  auto eval = [&](const Vector& mu, Vector* sub) {
    Matrix m = m0;
    for (std::size_t j = 0; j < g.size(); ++j) m += mu[static_cast<Eigen::Index>(j)] * g[j];
    Vector v;
    const double phi = max_eig(m, sub ? &v : nullptr);
    if (sub) {
      sub->resize(static_cast<Eigen::Index>(g.size()));
      for (std::size_t j = 0; j < g.size(); ++j) (*sub)[static_cast<Eigen::Index>(j)] = v.dot(g[j] * v);
    }
    return phi;
  };

  Vector mu = Vector::Zero(z.cols());
  Vector best_mu = mu;
  Vector sub;
  double best = eval(mu, &sub);
  double delta = 0.5 * std::max(1.0, std::abs(best));
  double ref = best;
  int since = 0;
  bool stalled = g.empty();
  int it = 0;
  for (; it < p.max_iterations && !stalled && best > -p.tol; ++it) {
    const double phi = eval(mu, &sub);
    if (phi < best) {
      best = phi;
      best_mu = mu;
    }
    const double gn = sub.squaredNorm();
    if (gn < 1e-30) {
      stalled = true;
      break;
    }
    const double target = best - delta;
    mu -= ((phi - target) / gn) * sub;
    if (best <= ref - 0.5 * delta) {
      ref = best;
      since = 0;
    } else if (++since > 50) {
      delta *= 0.5;
      mu = best_mu;
      ref = best;
      since = 0;
      stalled = delta < 1e-2 * p.tol;
    }
  }

  out.iterations = it;
  out.phi = best;
  out.lambda = lambda0 + z * best_mu;
  if (best <= p.tol) {
    out.status = LMIStatus::Feasible;
  } else if (stalled && best >= 10 * p.tol) {
    out.status = LMIStatus::Infeasible;
  } else {
    out.status = LMIStatus::Inconclusive;
  }
  return out;
}

SdpMembership level1_membership(const QPolys& f, const std::vector<double>& y, const std::vector<double>& u,
                                double tol) {
  check_on_variety(f, y, tol);
  if (u.size() != y.size()) throw std::invalid_argument("u and y differ in length");
  const auto n = static_cast<Eigen::Index>(y.size());
  LMIProblem p;
  for (const auto& fi : f) p.b.push_back(hessian(fi));
  p.c = 2.0 * Matrix::Identity(n, n);
  p.e = 0.5 * jacobian_at(f, y);
  p.rhs.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) p.rhs[i] = y[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i)];
  p.tol = tol;
  return to_membership(lmi_feasible(p));
}

std::vector<double> VeroneseLift::embed(const std::vector<double>& x) const {
  std::vector<double> z;
  for (const auto& a : index) {
    double v = 1;
    for (std::size_t i = 0; i < n; ++i) {
      for (unsigned k = 0; k < a[i]; ++k) v *= x[i];
    }
    z.push_back(v);
  }
  return z;
}

void LiftedQuadric::add(int a, int b, const Rational& c) {
  if (a > b) std::swap(a, b);
  auto [it, fresh] = terms.try_emplace({a, b}, c);
  if (!fresh) it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

Rational LiftedQuadric::evaluate(const std::vector<Rational>& z) const {
  auto at = [&](int i) { return i < 0 ? Rational(1) : z[static_cast<std::size_t>(i)]; };
  Rational s;
  for (const auto& [ab, c] : terms) s += c * at(ab.first) * at(ab.second);
  return s;
}

Vector LiftedQuadric::gradient(const std::vector<double>& z) const {
  Vector g = Vector::Zero(static_cast<Eigen::Index>(z.size()));
  auto at = [&](int i) { return i < 0 ? 1.0 : z[static_cast<std::size_t>(i)]; };
  for (const auto& [ab, c] : terms) {
    const double v = c.to_double();
    if (ab.first >= 0) g[ab.first] += v * at(ab.second);
    if (ab.second >= 0) g[ab.second] += v * at(ab.first);
  }
  return g;
}

Matrix LiftedQuadric::hessian(std::size_t big_n) const {
  const auto m = static_cast<Eigen::Index>(big_n);
  Matrix h = Matrix::Zero(m, m);
  for (const auto& [ab, c] : terms) {
    if (ab.first < 0) continue;
    const double v = c.to_double();
    h(ab.first, ab.second) += v;
    h(ab.second, ab.first) += v;
  }
  return h;
}

Polynomial<Rational> LiftedQuadric::pullback(const std::vector<Monomial>& index, const RingPtr& x_ring) const {
  const Monomial one(x_ring->nvars());
  auto mono = [&](int i) { return i < 0 ? one : index[static_cast<std::size_t>(i)]; };
  std::vector<Term<Rational>> out;
  for (const auto& [ab, c] : terms) out.push_back({mono(ab.first) * mono(ab.second), c});
  return Polynomial<Rational>::from_terms(x_ring, std::move(out));
}

Matrix VeroneseLift::jacobian(const std::vector<double>& y) const {
  const std::vector<double> z = embed(y);
  Matrix j(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(quadrics.size()));
  for (std::size_t c = 0; c < quadrics.size(); ++c) j.col(static_cast<Eigen::Index>(c)) = quadrics[c].gradient(z);
  return j;
}

VeroneseLift veronese_lift(const QPolys& f, unsigned d) {
  if (f.empty()) throw std::invalid_argument("no equations");
  if (d < 1) throw std::invalid_argument("level must be at least 1");
  const RingPtr& xr = f.front().ring();
  const std::size_t n = xr->nvars();
  VeroneseLift lift;
  lift.n = n;
  lift.d = d;
  lift.index = veronese_index(n, d);
  const std::size_t big_n = lift.index.size();
  if (big_n > kMaxLiftSize) {
    throw LiftTooLarge("Veronese lift has N = " + std::to_string(big_n) + " > " + std::to_string(kMaxLiftSize));
  }

  // Position of a monomial among z_0 = 1, z_1..z_N, as -1..N-1.
  auto position = [&](const Monomial& m) -> int {
    if (m.is_one()) return -1;
    for (std::size_t i = 0; i < big_n; ++i) {
      if (lift.index[i] == m) return static_cast<int>(i);
    }
    throw std::logic_error("monomial outside the Veronese index");
  };

  for (const auto& fi : f) {
    if (!same_ring(fi.ring(), xr)) throw RingMismatch("equations live in different rings");
    if (fi.total_degree() > 2 * d) {
      throw std::invalid_argument("degree " + std::to_string(fi.total_degree()) + " exceeds 2d = " +
                                  std::to_string(2 * d));
    }
    LiftedQuadric q;
    for (const auto& t : fi.terms()) {
      if (t.mono.degree() <= d) {
        q.add(-1, position(t.mono), t.coeff);
        continue;
      }
      Monomial a(n);
      unsigned left = d;
      for (std::size_t i = 0; i < n && left > 0; ++i) {
        const unsigned take = std::min(left, t.mono[i]);
        a.set(i, take);
        left -= take;
      }
      q.add(position(a), position(t.mono / a), t.coeff);
    }
    lift.quadrics.push_back(std::move(q));
  }
  lift.lifted_count = lift.quadrics.size();

  // Pairs {a, b} from A plus 0, grouped by a + b; the first pair of a group is related to each other one.
  std::map<std::vector<unsigned>, std::vector<std::pair<int, int>>> groups;
  std::vector<std::vector<unsigned>> order;
  auto mono = [&](int i) { return i < 0 ? Monomial(n) : lift.index[static_cast<std::size_t>(i)]; };
  for (int i = -1; i < static_cast<int>(big_n); ++i) {
    for (int j = std::max(i, 0); j < static_cast<int>(big_n); ++j) {
      const Monomial s = mono(i) * mono(j);
      std::vector<unsigned> key(n);
      for (std::size_t v = 0; v < n; ++v) key[v] = s[v];
      auto [it, fresh] = groups.try_emplace(key);
      if (fresh) order.push_back(key);
      it->second.emplace_back(i, j);
    }
  }
  for (const auto& key : order) {
    const auto& pairs = groups[key];
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      LiftedQuadric rel;
      rel.add(pairs[0].first, pairs[0].second, Rational(1));
      rel.add(pairs[k].first, pairs[k].second, Rational(-1));
      lift.quadrics.push_back(std::move(rel));
    }
  }

  // f_i = q_i(nu_d(x)) exactly.
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(lift.quadrics[i].pullback(lift.index, xr) == f[i])) throw std::logic_error("Veronese lift is not exact");
  }
  for (const auto& q : lift.quadrics) lift.hessians.push_back(q.hessian(big_n));
  return lift;
}

SdpMembership leveld_membership(const VeroneseLift& lift, const std::vector<double>& y, const std::vector<double>& u,
                                double tol) {
  if (u.size() != lift.n || y.size() != lift.n) throw std::invalid_argument("point has the wrong number of coordinates");
  const auto n = static_cast<Eigen::Index>(lift.n);
  const auto big_n = static_cast<Eigen::Index>(lift.size());
  const Matrix j = lift.jacobian(y);
  LMIProblem p;
  p.b = lift.hessians;
  p.c = Matrix::Zero(big_n, big_n);
  p.c.topLeftCorner(n, n) = 2.0 * Matrix::Identity(n, n);
  p.e.resize(big_n, j.cols());
  p.e.topRows(big_n - n) = j.bottomRows(big_n - n);
  p.e.bottomRows(n) = 0.5 * j.topRows(n);
  p.rhs = Vector::Zero(big_n);
  for (Eigen::Index i = 0; i < n; ++i) {
    p.rhs[big_n - n + i] = y[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i)];
  }
  p.tol = tol;
  return to_membership(lmi_feasible(p));
}

SdpMembership leveld_membership(const QPolys& f, const std::vector<double>& y, const std::vector<double>& u,
                                unsigned d, double tol) {
  check_on_variety(f, y, tol);
  return leveld_membership(veronese_lift(f, d), y, u, tol);
}

}  // namespace vorcell
