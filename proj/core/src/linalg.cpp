#include "gaplab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace gaplab {

SvdResult svd(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    return {Matrix(m.rows(), 0), RealVector(0), Matrix(m.cols(), 0)};
  }
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

double operator_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> dec(m);
  return dec.singularValues()(0);
}

Index rank_of(const Matrix& m, const Tolerances& tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> dec(m);
  const auto& sv = dec.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = tol.rank_tol * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

Matrix solve_invertible(const Matrix& m, const Matrix& rhs, const Tolerances& tol) {
  if (m.rows() != m.cols())
    throw NotInvertible("solve_invertible: matrix is not square");
  if (m.rows() != rhs.rows())
    throw DimensionMismatch("solve_invertible: rhs row count does not match");
  if (m.rows() == 0) return Matrix(0, rhs.cols());
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = dec.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smax == 0.0 || smin <= tol.rank_tol * smax)
    throw NotInvertible("solve_invertible: singular at tolerance");
  if (smax / smin > tol.cond_max)
    throw NotInvertible("solve_invertible: condition number exceeds cond_max");
  return dec.solve(rhs);
}

Matrix orthonormal_columns(const Matrix& m, const Tolerances& tol) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeThinU);
  const auto& sv = dec.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return Matrix(m.rows(), 0);
  const double cutoff = tol.rank_tol * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return dec.matrixU().leftCols(r);
}

Matrix nullspace(const Matrix& m, const Tolerances& tol) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeFullV);
  const auto& sv = dec.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = tol.rank_tol * smax;
  Index r = 0;
  if (smax > 0.0)
    while (r < sv.size() && sv(r) > cutoff) ++r;
  return dec.matrixV().rightCols(m.cols() - r);
}

Matrix nullspace_below(const Matrix& m, double cutoff) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeFullV);
  const auto& sv = dec.singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return dec.matrixV().rightCols(m.cols() - r);
}

Matrix pseudoinverse(const Matrix& m, const Tolerances& tol) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix(m.cols(), m.rows());
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = dec.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = tol.rank_tol * smax;
  RealVector inv(sv.size());
  for (Index i = 0; i < sv.size(); ++i)
    inv(i) = (smax > 0.0 && sv(i) > cutoff) ? 1.0 / sv(i) : 0.0;
  return dec.matrixV() * inv.asDiagonal() * dec.matrixU().adjoint();
}

Matrix inv_sqrt_one_plus_gram(const Matrix& m) {
  const Index n = m.cols();
  Matrix gram = Matrix::Identity(n, n) + m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  RealVector d = es.eigenvalues();
  RealVector inv_sqrt(d.size());
  for (Index i = 0; i < d.size(); ++i) inv_sqrt(i) = 1.0 / std::sqrt(d(i));
  return es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix hermitian_calculus(const Matrix& t, const std::function<Complex(double)>& f) {
  if (t.rows() != t.cols())
    throw NotHermitian("hermitian_calculus: matrix is not square");
  if (operator_norm(t - t.adjoint()) > 1e-10)
    throw NotHermitian("hermitian_calculus: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(t);
  const RealVector& d = es.eigenvalues();
  Vector fd(d.size());
  for (Index i = 0; i < d.size(); ++i) fd(i) = f(d(i));
  return es.eigenvectors() * fd.asDiagonal() * es.eigenvectors().adjoint();
}

bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex& c = m(i, j);
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
  return true;
}

}  // namespace gaplab
