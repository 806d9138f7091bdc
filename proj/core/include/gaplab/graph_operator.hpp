#pragma once

#include "gaplab/subspace.hpp"

#include <vector>

namespace gaplab {

/// A (possibly partial-domain) linear operator T : C^{n1} -> C^{n2}, stored
/// through an injective resolution pair (W, V): Dom T = Ran W and
/// T(W u) = V u.  On construction the stacked columns (W; V) are
/// orthonormalized, so the stored blocks are slices of an orthonormal basis
/// of the graph {(x, Tx)} in C^{n1+n2}.
///
/// A partial domain is how finite dimensions emulate unboundedness: "densely
/// defined" collapses to Dom T = C^{n1}, so everywhere-defined operators are
/// exactly the bounded ones and adjoints of partial-domain operators may fail
/// to exist as operators (AdjointIsRelation).
class GraphOperator {
 public:
  /// From a resolution pair.  W must have full column rank at tolerance.
  GraphOperator(Index h1_dim, Index h2_dim, const Matrix& w, const Matrix& v,
                const Tolerances& tol = {});

  /// Everywhere-defined operator given by a matrix: W = I, V = T.
  static GraphOperator from_matrix(const Matrix& t, const Tolerances& tol = {});

  /// Recovers an operator from a subspace K of C^{n1+n2}.  Throws NotAGraph
  /// (with a witness direction) when K meets {0} (+) C^{n2}.
  static GraphOperator from_graph_subspace(const Subspace& k, Index h1_dim, Index h2_dim,
                                           const Tolerances& tol = {});

  Index h1_dim() const { return h1_dim_; }
  Index h2_dim() const { return h2_dim_; }
  Index graph_dim() const { return w_.cols(); }
  const Matrix& resolution_w() const { return w_; }
  const Matrix& resolution_v() const { return v_; }

  bool everywhere_defined(const Tolerances& tol = {}) const;

  /// The graph subspace of C^{n1+n2} (orthonormal basis, no recomputation).
  Subspace graph() const;

  /// Applies the operator.  The input must lie within gap_tol * ||x|| of the
  /// domain; it is projected onto the domain first, so finite-difference
  /// probes that wobble off the domain stay usable.
  Vector apply(const Vector& x, const Tolerances& tol = {}) const;

  Subspace domain(const Tolerances& tol = {}) const;
  Subspace range(const Tolerances& tol = {}) const;
  Subspace kernel(const Tolerances& tol = {}) const;

  /// Dense matrix of an everywhere-defined operator.
  Matrix to_matrix(const Tolerances& tol = {}) const;

 private:
  friend GraphOperator compose(const GraphOperator&, const GraphOperator&, const Tolerances&);
  friend GraphOperator add(const GraphOperator&, const GraphOperator&, const Tolerances&);
  struct trusted_tag {};
  GraphOperator(trusted_tag, Index n1, Index n2, Matrix w, Matrix v);

  /// apply() without the domain-distance guard, for callers that construct
  /// in-domain inputs themselves.
  Matrix apply_columns(const Matrix& x) const;

  Index h1_dim_;
  Index h2_dim_;
  Matrix w_;  // n1 x k
  Matrix v_;  // n2 x k
};

/// inf ||Tx|| / ||x|| over the domain; 0 when the kernel is nontrivial.
double reduced_min_modulus(const GraphOperator& t, const Tolerances& tol = {});

/// Gap between the graphs; the transported metric on operators.
double operator_gap(const GraphOperator& t, const GraphOperator& s);

/// Product A B on Dom(AB) = B^{-1} Dom(A).  Never fails; the domain may be
/// the zero subspace.
GraphOperator compose(const GraphOperator& a, const GraphOperator& b, const Tolerances& tol = {});

/// Sum on Dom T intersect Dom S.
GraphOperator add(const GraphOperator& t, const GraphOperator& s, const Tolerances& tol = {});

/// Graph flip (W, V) -> (V, W); requires trivial kernel.
GraphOperator inverse(const GraphOperator& t, const Tolerances& tol = {});

/// Adjoint through the orthogonal complement of the graph and the coordinate
/// shuffle (a, b) -> (b, -a).  Throws AdjointIsRelation when Dom T is not the
/// whole space.
GraphOperator adjoint(const GraphOperator& t, const Tolerances& tol = {});

/// Eigenvalue multiset of an everywhere-defined square operator, sorted by
/// (re, im).
std::vector<Complex> spectrum(const GraphOperator& t, const Tolerances& tol = {});

/// lambda is in the resolvent set iff T - lambda is injective with full range
/// at tolerance.  Partial-domain operators have empty resolvent set.
bool is_in_resolvent_set(const GraphOperator& t, Complex lambda, const Tolerances& tol = {});

/// Orthogonal projector onto the graph of T.
Matrix characteristic_matrix(const GraphOperator& t);

/// Same projector assembled from the bounded transform blocks
///   [ D     D T*   ]
///   [ T D   T D T* ],   D = (I + T*T)^{-1},
/// for an everywhere-defined T.  Independent route used for cross-checks.
Matrix characteristic_matrix_blocks(const Matrix& t);

/// Oblique projection onto Gr(T) along Gr(S)^perp, via the orthonormal graph
/// bases J_T, J_S:  J_T (J_S^* J_T)^{-1} J_S^*.  Throws NotTransversal when
/// J_S^* J_T is not invertible at tolerance.
Matrix relative_characteristic_matrix(const GraphOperator& t, const GraphOperator& s,
                                      const Tolerances& tol = {});

/// Block assembly of the same projection for everywhere-defined T, S:
///   [ (I+S*T)^{-1}    (I+S*T)^{-1} S*   ]
///   [ T (I+S*T)^{-1}  T (I+S*T)^{-1} S* ].
Matrix relative_characteristic_blocks(const Matrix& t, const Matrix& s,
                                      const Tolerances& tol = {});

/// ||T - T'|| after the left-invertible perturbation: for everywhere-defined
/// left-invertible T and ||S|| below the reduced minimum modulus, T + S stays
/// left invertible and the moduli differ by at most ||S||.
BoundReport check_left_invertible_perturbation(const GraphOperator& t, const Matrix& s,
                                               const Tolerances& tol = {});

/// gap((Ran T)^perp, Ker T*) and gap((Ker T)^perp, Ran T*) both below
/// gap_tol, for everywhere-defined T.
BoundReport check_closed_range_duality(const GraphOperator& t, const Tolerances& tol = {});

/// Off-diagonal block operator [[0, A], [B, 0]] on C^{n1+n2} with domain
/// Dom B (+) Dom A.
GraphOperator block_operator(const GraphOperator& a, const GraphOperator& b,
                             const Tolerances& tol = {});

/// Squares of the block-operator spectrum match sp(AB) (+) sp(BA) as
/// multisets, up to greedy nearest matching at 1e-8 * (1 + max |lambda|).
BoundReport check_spectrum_split(const Matrix& a, const Matrix& b, const Tolerances& tol = {});

}  // namespace gaplab
