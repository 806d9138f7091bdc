#pragma once

#include "gaplab/graph_operator.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace gaplab {

/// One matrix entry as a ratio of polynomials; coefficients ascend by degree.
struct RationalEntry {
  std::vector<Complex> num{Complex(0.0, 0.0)};
  std::vector<Complex> den{Complex(1.0, 0.0)};
};

Complex eval_poly(const std::vector<Complex>& coeffs, Complex z);

/// Matrix-valued rational function of one complex variable.  Poles are
/// reported (EvaluationFailed), never silently evaluated.
class RationalMatrixFamily {
 public:
  RationalMatrixFamily(Index rows, Index cols, std::vector<RationalEntry> entries);

  static RationalMatrixFamily constant(const Matrix& m);
  /// m0 + z * m1.
  static RationalMatrixFamily pencil(const Matrix& m0, const Matrix& m1);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const RationalEntry& entry(Index i, Index j) const { return entries_[i * cols_ + j]; }

  Matrix eval(Complex z) const;

 private:
  Index rows_;
  Index cols_;
  std::vector<RationalEntry> entries_;  // row-major
};

/// z -> GraphOperator over a region of C.  Evaluators are pure functions of
/// z, safe for concurrent evaluation at distinct points.
class OperatorFamily {
 public:
  using Evaluator = std::function<GraphOperator(Complex)>;

  OperatorFamily(Evaluator evaluator, Index h1_dim, Index h2_dim, std::string provenance);

  GraphOperator operator()(Complex z) const { return evaluator_(z); }
  Index h1_dim() const { return h1_dim_; }
  Index h2_dim() const { return h2_dim_; }
  const std::string& provenance() const { return provenance_; }

  static OperatorFamily constant(GraphOperator value);
  /// Everywhere-defined family z -> from_matrix(R(z)).
  static OperatorFamily from_rational(RationalMatrixFamily r, Tolerances tol = {});
  /// Partial-domain family from a resolution pair: Dom = Ran W(z),
  /// T(W u) = V u.  W(z) must be left invertible wherever evaluated.
  static OperatorFamily from_resolution(RationalMatrixFamily w, RationalMatrixFamily v,
                                        Tolerances tol = {});
  /// z -> (z - T)^{-1} as closed operators, defined away from eigenvalues of
  /// T via the graph flip; throws NotInjective at points of the spectrum.
  static OperatorFamily resolvent(Matrix t, Tolerances tol = {});

 private:
  Evaluator evaluator_;
  Index h1_dim_;
  Index h2_dim_;
  std::string provenance_;
};

class SubspaceFamily {
 public:
  using Evaluator = std::function<Subspace(Complex)>;

  SubspaceFamily(Evaluator evaluator, Index ambient_dim, std::string provenance);

  Subspace operator()(Complex z) const { return evaluator_(z); }
  Index ambient_dim() const { return ambient_dim_; }
  const std::string& provenance() const { return provenance_; }

  /// z -> graph of F(z); operator holomorphy is by definition holomorphy of
  /// this family.
  static SubspaceFamily graph_of(OperatorFamily family);

 private:
  Evaluator evaluator_;
  Index ambient_dim_;
  std::string provenance_;
};

/// Pointwise product z -> A(z) B(z).
OperatorFamily product_family(OperatorFamily a, OperatorFamily b, Tolerances tol = {});

/// Pointwise sum on the intersected domains.
OperatorFamily sum_family(OperatorFamily t, OperatorFamily s, Tolerances tol = {});

/// Reflected family z -> adjoint(F(conj(z))).  The parameter is conjugated
/// exactly before evaluation; no symbolic conjugation of data happens.
OperatorFamily reflect(OperatorFamily f, Tolerances tol = {});

/// z -> Ker S(z) for a family of everywhere-defined surjections; throws
/// NotSurjective on evaluation otherwise.
SubspaceFamily kernel_family(OperatorFamily s, Tolerances tol = {});

}  // namespace gaplab
