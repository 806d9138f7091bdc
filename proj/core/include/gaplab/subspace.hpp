#pragma once

#include "gaplab/linalg.hpp"

#include <string>

namespace gaplab {

/// A closed subspace of C^n, held as an orthonormal column basis.  The zero
/// subspace (0 columns) and the full space are both ordinary values.
class Subspace {
 public:
  /// Span of arbitrary columns; the basis is rank-revealed and orthonormalized.
  static Subspace from_spanning(const Matrix& vectors, const Tolerances& tol = {});

  /// Wraps a matrix that is already orthonormal (debug-checked only).
  static Subspace from_orthonormal(Matrix q);

  static Subspace zero(Index ambient_dim);
  static Subspace full(Index ambient_dim);

  Index ambient_dim() const { return ambient_dim_; }
  Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

 private:
  Subspace(Index n, Matrix basis) : ambient_dim_(n), basis_(std::move(basis)) {}
  Index ambient_dim_;
  Matrix basis_;  // n x k, orthonormal columns
};

Subspace orthocomplement(const Subspace& x);

/// Orthogonal projector B B^H onto the subspace.
Matrix projector(const Subspace& x);

/// One-sided distance sup_{x in ball(X)} dist(x, Y), computed in operator
/// form as ||(I - P_Y) B_X||.  The supremum over the empty ball is 0.
double delta(const Subspace& x, const Subspace& y);

/// Symmetrized gap max(delta(X,Y), delta(Y,X)).  In this Hilbert setting it
/// coincides with ||P_X - P_Y||.
double gap(const Subspace& x, const Subspace& y);

double projector_distance(const Subspace& x, const Subspace& y);

/// Idempotent with range X and kernel Y, built as J (I J)^{-1} I where J is
/// the basis of X and I the adjoint basis of the orthocomplement of Y.
/// Throws NotComplementary when X (+) Y != C^n.
Matrix oblique_projection(const Subspace& x, const Subspace& y, const Tolerances& tol = {});

bool is_complementary(const Subspace& x, const Subspace& y, const Tolerances& tol = {});

/// Image T X of a subspace under an invertible map.
Subspace map_subspace(const Matrix& t, const Subspace& x, const Tolerances& tol = {});

/// Largest subspace contained in both, via the kernel of stacked
/// orthocomplement constraints.
Subspace intersect(const Subspace& x, const Subspace& y, const Tolerances& tol = {});

Subspace sum_subspace(const Subspace& x, const Subspace& y, const Tolerances& tol = {});

/// Outcome of a checkable inequality: both sides, whether the hypotheses of
/// the underlying statement held, and whether the bound passed.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool hypotheses_hold = true;
  bool bound_holds = false;
  std::string detail;
};

/// max(gap(X,X'), gap(Y,Y')) <= ||P_{X,Y} - P_{X',Y'}|| for two complementary
/// pairs.
BoundReport check_projector_gap_bound(const Subspace& x, const Subspace& y,
                                      const Subspace& xp, const Subspace& yp,
                                      const Tolerances& tol = {});

/// Perturbation bound for oblique projections: under the smallness hypotheses
/// on the one-sided deltas the perturbed pair stays complementary and
/// ||P_{X,Y} - P_{X',Y'}|| obeys an explicit estimate.  Hypothesis failures
/// are reported, not thrown.
BoundReport check_perturbation_bound(const Subspace& x, const Subspace& y,
                                     const Subspace& xp, const Subspace& yp,
                                     const Tolerances& tol = {});

/// delta(Ran T, Ran S) <= ||(T - S) pinv(T)|| on Ran T, for left-invertible T.
BoundReport check_range_delta_bound(const Matrix& t, const Matrix& s,
                                    const Tolerances& tol = {});

}  // namespace gaplab
