#pragma once

#include "gaplab/errors.hpp"
#include "gaplab/types.hpp"

#include <functional>

namespace gaplab {

/// Thin SVD, M = U * diag(sigma) * V^H.  U and V have orthonormal columns;
/// singular values are nonnegative and descending.  Empty inputs yield empty
/// factors.
struct SvdResult {
  Matrix u;
  RealVector singular_values;
  Matrix v;
};

SvdResult svd(const Matrix& m);

/// Largest singular value (0 for empty matrices).
double operator_norm(const Matrix& m);

/// Number of singular values above rank_tol * sigma_max.
Index rank_of(const Matrix& m, const Tolerances& tol = {});

/// Solves M * X = rhs for square M.  Throws NotInvertible when M is rank
/// deficient at tolerance or its condition number exceeds cond_max.
Matrix solve_invertible(const Matrix& m, const Matrix& rhs, const Tolerances& tol = {});

/// Rank-revealing orthonormal basis of the column span (0 columns for M = 0).
Matrix orthonormal_columns(const Matrix& m, const Tolerances& tol = {});

/// Orthonormal basis of the null space {x : M x = 0} at tolerance.
/// A matrix with no rows annihilates nothing, so the result is a full basis.
Matrix nullspace(const Matrix& m, const Tolerances& tol = {});

/// Orthonormal basis of the directions u with ||M u|| <= cutoff.  Unlike
/// nullspace() the cutoff is absolute, for membership decisions where M may
/// consist entirely of roundoff noise.
Matrix nullspace_below(const Matrix& m, double cutoff);

/// Moore-Penrose pseudoinverse at the rank tolerance.
Matrix pseudoinverse(const Matrix& m, const Tolerances& tol = {});

/// Inverse square root (I + M^H M)^{-1/2} through a Hermitian
/// eigendecomposition; the argument is positive definite by construction.
Matrix inv_sqrt_one_plus_gram(const Matrix& m);

/// f(T) for Hermitian T via eigendecomposition.  Throws NotHermitian if
/// ||T - T^H|| exceeds 1e-10.
Matrix hermitian_calculus(const Matrix& t, const std::function<Complex(double)>& f);

/// True when no entry is NaN or infinite.
bool all_finite(const Matrix& m);

}  // namespace gaplab
