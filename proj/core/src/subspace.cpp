#include "gaplab/subspace.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace gaplab {

Subspace Subspace::from_spanning(const Matrix& vectors, const Tolerances& tol) {
  if (!all_finite(vectors))
    throw PreconditionViolated("Subspace: spanning vectors contain NaN/Inf");
  return Subspace(vectors.rows(), orthonormal_columns(vectors, tol));
}

Subspace Subspace::from_orthonormal(Matrix q) {
  assert(q.cols() == 0 ||
         operator_norm(Matrix(q.adjoint() * q) - Matrix::Identity(q.cols(), q.cols())) < 1e-10);
  const Index n = q.rows();
  return Subspace(n, std::move(q));
}

Subspace Subspace::zero(Index ambient_dim) { return Subspace(ambient_dim, Matrix(ambient_dim, 0)); }

Subspace Subspace::full(Index ambient_dim) {
  return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim));
}

Subspace orthocomplement(const Subspace& x) {
  // Null space of B^H is exactly the orthogonal complement of Ran B.
  return Subspace::from_orthonormal(nullspace(x.basis().adjoint()));
}

Matrix projector(const Subspace& x) {
  if (x.dim() == 0) return Matrix::Zero(x.ambient_dim(), x.ambient_dim());
  return x.basis() * x.basis().adjoint();
}

static void require_same_ambient(const Subspace& x, const Subspace& y, const char* who) {
  if (x.ambient_dim() != y.ambient_dim()) {
    std::ostringstream os;
    os << who << ": ambient dimensions differ (" << x.ambient_dim() << " vs " << y.ambient_dim()
       << ")";
    throw DimensionMismatch(os.str());
  }
}

double delta(const Subspace& x, const Subspace& y) {
  require_same_ambient(x, y, "delta");
  if (x.dim() == 0) return 0.0;
  Matrix residual = x.basis() - y.basis() * (y.basis().adjoint() * x.basis());
  return operator_norm(residual);
}

double gap(const Subspace& x, const Subspace& y) {
  return std::max(delta(x, y), delta(y, x));
}

double projector_distance(const Subspace& x, const Subspace& y) {
  require_same_ambient(x, y, "projector_distance");
  return operator_norm(projector(x) - projector(y));
}

Matrix oblique_projection(const Subspace& x, const Subspace& y, const Tolerances& tol) {
  require_same_ambient(x, y, "oblique_projection");
  const Index n = x.ambient_dim();
  const Subspace yc = orthocomplement(y);
  if (x.dim() != yc.dim())
    throw NotComplementary("oblique_projection: dim X + dim Y != ambient dimension");
  if (x.dim() == 0) return Matrix::Zero(n, n);
  // J maps coordinates onto X, I annihilates exactly Y.
  Matrix j = x.basis();
  Matrix i = yc.basis().adjoint();
  Matrix ij = i * j;
  Matrix coeff;
  try {
    coeff = solve_invertible(ij, i, tol);
  } catch (const NotInvertible&) {
    throw NotComplementary("oblique_projection: X and Y are not complementary");
  }
  return j * coeff;
}

bool is_complementary(const Subspace& x, const Subspace& y, const Tolerances& tol) {
  if (x.ambient_dim() != y.ambient_dim()) return false;
  try {
    oblique_projection(x, y, tol);
    return true;
  } catch (const NotComplementary&) {
    return false;
  }
}

Subspace map_subspace(const Matrix& t, const Subspace& x, const Tolerances& tol) {
  if (t.rows() != t.cols()) throw NotInvertible("map_subspace: matrix is not square");
  if (t.cols() != x.ambient_dim())
    throw DimensionMismatch("map_subspace: matrix does not act on the ambient space");
  if (rank_of(t, tol) != t.rows()) throw NotInvertible("map_subspace: matrix is singular");
  const double cond = operator_norm(t) * operator_norm(pseudoinverse(t, tol));
  if (cond > tol.cond_max) throw NotInvertible("map_subspace: condition number exceeds cond_max");
  return Subspace::from_spanning(t * x.basis(), tol);
}

Subspace intersect(const Subspace& x, const Subspace& y, const Tolerances& tol) {
  require_same_ambient(x, y, "intersect");
  const Index n = x.ambient_dim();
  const Subspace xc = orthocomplement(x);
  const Subspace yc = orthocomplement(y);
  Matrix constraints(xc.dim() + yc.dim(), n);
  constraints.topRows(xc.dim()) = xc.basis().adjoint();
  constraints.bottomRows(yc.dim()) = yc.basis().adjoint();
  return Subspace::from_orthonormal(nullspace(constraints, tol));
}

Subspace sum_subspace(const Subspace& x, const Subspace& y, const Tolerances& tol) {
  require_same_ambient(x, y, "sum_subspace");
  Matrix stacked(x.ambient_dim(), x.dim() + y.dim());
  stacked.leftCols(x.dim()) = x.basis();
  stacked.rightCols(y.dim()) = y.basis();
  return Subspace::from_spanning(stacked, tol);
}

BoundReport check_projector_gap_bound(const Subspace& x, const Subspace& y, const Subspace& xp,
                                      const Subspace& yp, const Tolerances& tol) {
  Matrix p = oblique_projection(x, y, tol);
  Matrix pp = oblique_projection(xp, yp, tol);
  BoundReport report;
  report.lhs = std::max(gap(x, xp), gap(y, yp));
  report.rhs = operator_norm(p - pp);
  report.hypotheses_hold = true;
  report.bound_holds = report.lhs <= report.rhs + tol.gap_tol;
  return report;
}

BoundReport check_perturbation_bound(const Subspace& x, const Subspace& y, const Subspace& xp,
                                     const Subspace& yp, const Tolerances& tol) {
  Matrix p_xy = oblique_projection(x, y, tol);
  const double np = operator_norm(p_xy);
  const double nq = operator_norm(Matrix::Identity(p_xy.rows(), p_xy.cols()) - p_xy);

  const double d_xp_x = delta(xp, x);
  const double d_yp_y = delta(yp, y);
  const double d_x_xp = delta(x, xp);
  const double d_y_yp = delta(y, yp);

  BoundReport report;
  const double hyp_injective = nq * d_xp_x + np * d_yp_y;
  const double hyp_surjective = nq * d_y_yp + np * d_x_xp;
  report.hypotheses_hold = hyp_injective < 1.0 && hyp_surjective < 1.0;
  {
    std::ostringstream os;
    os << "hypotheses: " << hyp_injective << " < 1, " << hyp_surjective << " < 1";
    report.detail = os.str();
  }
  if (!report.hypotheses_hold) return report;

  const double denom = 1.0 - np * d_xp_x - nq * d_yp_y;
  if (denom <= 0.0) {
    report.hypotheses_hold = false;
    report.detail += "; estimate denominator not positive";
    return report;
  }

  if (!is_complementary(xp, yp, tol)) {
    report.bound_holds = false;
    report.detail += "; perturbed pair failed to be complementary";
    return report;
  }
  Matrix p_pert = oblique_projection(xp, yp, tol);
  report.lhs = operator_norm(p_xy - p_pert);
  report.rhs = np * nq * (d_xp_x + d_yp_y) / denom;
  report.bound_holds = report.lhs <= report.rhs + tol.gap_tol;
  return report;
}

BoundReport check_range_delta_bound(const Matrix& t, const Matrix& s, const Tolerances& tol) {
  if (t.rows() != s.rows() || t.cols() != s.cols())
    throw DimensionMismatch("check_range_delta_bound: shapes differ");
  if (rank_of(t, tol) != t.cols())
    throw NotLeftInvertible("check_range_delta_bound: T is not left invertible");

  const Subspace ran_t = Subspace::from_spanning(t, tol);
  const Subspace ran_s = Subspace::from_spanning(s, tol);

  // (T - S) applied to the preimage of an orthonormal basis of Ran T.
  Matrix preimage = pseudoinverse(t, tol) * ran_t.basis();
  BoundReport report;
  report.lhs = delta(ran_t, ran_s);
  report.rhs = operator_norm((t - s) * preimage);
  report.hypotheses_hold = true;
  report.bound_holds = report.lhs <= report.rhs + tol.gap_tol;
  return report;
}

}  // namespace gaplab
