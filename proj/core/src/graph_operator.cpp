#include "gaplab/graph_operator.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gaplab {

namespace {

Matrix stack(const Matrix& top, const Matrix& bottom) {
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

}  // namespace

GraphOperator::GraphOperator(trusted_tag, Index n1, Index n2, Matrix w, Matrix v)
    : h1_dim_(n1), h2_dim_(n2), w_(std::move(w)), v_(std::move(v)) {}

GraphOperator::GraphOperator(Index h1_dim, Index h2_dim, const Matrix& w, const Matrix& v,
                             const Tolerances& tol)
    : h1_dim_(h1_dim), h2_dim_(h2_dim) {
  if (w.rows() != h1_dim || v.rows() != h2_dim || w.cols() != v.cols())
    throw DimensionMismatch("GraphOperator: resolution pair has inconsistent shape");
  if (!all_finite(w) || !all_finite(v))
    throw PreconditionViolated("GraphOperator: resolution contains NaN/Inf");
  if (rank_of(w, tol) != w.cols())
    throw NotLeftInvertible("GraphOperator: W does not have full column rank");
  Matrix graph_basis = orthonormal_columns(stack(w, v), tol);
  w_ = graph_basis.topRows(h1_dim);
  v_ = graph_basis.bottomRows(h2_dim);
}

GraphOperator GraphOperator::from_matrix(const Matrix& t, const Tolerances& tol) {
  return GraphOperator(t.cols(), t.rows(), Matrix::Identity(t.cols(), t.cols()), t, tol);
}

GraphOperator GraphOperator::from_graph_subspace(const Subspace& k, Index h1_dim, Index h2_dim,
                                                 const Tolerances& tol) {
  if (k.ambient_dim() != h1_dim + h2_dim)
    throw DimensionMismatch("from_graph_subspace: ambient dimension is not n1 + n2");
  Matrix top = k.basis().topRows(h1_dim);
  Matrix bottom = k.basis().bottomRows(h2_dim);
  if (rank_of(top, tol) != k.dim()) {
    // K meets the vertical space {0} (+) C^{n2}; exhibit a direction.
    Matrix null_dirs = nullspace(top, tol);
    Vector witness = Vector::Zero(h1_dim + h2_dim);
    if (null_dirs.cols() > 0) {
      witness = k.basis() * null_dirs.col(0);
      witness.head(h1_dim).setZero();
      const double norm = witness.norm();
      if (norm > 0) witness /= norm;
    }
    throw NotAGraph("from_graph_subspace: subspace meets {0} (+) H2", witness);
  }
  GraphOperator op(trusted_tag{}, h1_dim, h2_dim, top, bottom);
  return op;
}

bool GraphOperator::everywhere_defined(const Tolerances&) const { return graph_dim() == h1_dim_; }

Subspace GraphOperator::graph() const { return Subspace::from_orthonormal(stack(w_, v_)); }

Matrix GraphOperator::apply_columns(const Matrix& x) const {
  // W has full column rank, so the least-squares coordinates are unique.
  Matrix coords = pseudoinverse(w_) * x;
  return v_ * coords;
}

Vector GraphOperator::apply(const Vector& x, const Tolerances& tol) const {
  if (x.size() != h1_dim_) throw DimensionMismatch("apply: input has wrong dimension");
  Matrix coords = pseudoinverse(w_, tol) * x;
  Vector projected = w_ * coords;
  if ((x - projected).norm() > tol.gap_tol * std::max(1e-300, x.norm()))
    throw NotInDomain("apply: input is not in the domain at tolerance");
  return v_ * coords;
}

Subspace GraphOperator::domain(const Tolerances& tol) const {
  return Subspace::from_spanning(w_, tol);
}

Subspace GraphOperator::range(const Tolerances& tol) const {
  return Subspace::from_spanning(v_, tol);
}

Subspace GraphOperator::kernel(const Tolerances& tol) const {
  Matrix null_coords = nullspace(v_, tol);
  return Subspace::from_spanning(w_ * null_coords, tol);
}

Matrix GraphOperator::to_matrix(const Tolerances& tol) const {
  if (!everywhere_defined(tol))
    throw PreconditionViolated("to_matrix: operator is not everywhere defined");
  return v_ * solve_invertible(w_, Matrix::Identity(h1_dim_, h1_dim_), tol);
}

double reduced_min_modulus(const GraphOperator& t, const Tolerances& tol) {
  if (t.kernel(tol).dim() > 0) return 0.0;
  if (t.graph_dim() == 0) return 0.0;
  // Matrix of T on an orthonormal basis of the domain.
  Matrix q = t.domain(tol).basis();
  Matrix coords = pseudoinverse(t.resolution_w(), tol) * q;
  Matrix action = t.resolution_v() * coords;
  SvdResult dec = svd(action);
  return dec.singular_values(dec.singular_values.size() - 1);
}

double operator_gap(const GraphOperator& t, const GraphOperator& s) {
  if (t.h1_dim() != s.h1_dim() || t.h2_dim() != s.h2_dim())
    throw DimensionMismatch("operator_gap: operators act between different spaces");
  return gap(t.graph(), s.graph());
}

GraphOperator compose(const GraphOperator& a, const GraphOperator& b, const Tolerances& tol) {
  if (b.h2_dim() != a.h1_dim())
    throw DimensionMismatch("compose: inner dimensions do not match");
  // Directions in B's resolution coordinates whose image lands in Dom A.
  // The cutoff is absolute: when every image lands inside, the residual
  // matrix is pure roundoff and a relative rank test would misread it.
  Matrix p_dom_a = projector(a.domain(tol));
  Matrix off_domain =
      b.resolution_v() - p_dom_a * b.resolution_v();
  Matrix coords = nullspace_below(off_domain, tol.rank_tol);
  Matrix w_new = b.resolution_w() * coords;
  Matrix mid = b.resolution_v() * coords;
  Matrix v_new = a.apply_columns(mid);
  if (w_new.cols() == 0)
    return GraphOperator(b.h1_dim(), a.h2_dim(), Matrix(b.h1_dim(), 0), Matrix(a.h2_dim(), 0),
                         tol);
  return GraphOperator(b.h1_dim(), a.h2_dim(), w_new, v_new, tol);
}

GraphOperator add(const GraphOperator& t, const GraphOperator& s, const Tolerances& tol) {
  if (t.h1_dim() != s.h1_dim() || t.h2_dim() != s.h2_dim())
    throw DimensionMismatch("add: operators act between different spaces");
  Subspace dom = intersect(t.domain(tol), s.domain(tol), tol);
  Matrix q = dom.basis();
  Matrix v_new = t.apply_columns(q) + s.apply_columns(q);
  return GraphOperator(t.h1_dim(), t.h2_dim(), q, v_new, tol);
}

GraphOperator inverse(const GraphOperator& t, const Tolerances& tol) {
  if (t.kernel(tol).dim() > 0) throw NotInjective("inverse: operator has nontrivial kernel");
  return GraphOperator(t.h2_dim(), t.h1_dim(), t.resolution_v(), t.resolution_w(), tol);
}

GraphOperator adjoint(const GraphOperator& t, const Tolerances& tol) {
  const Index n1 = t.h1_dim();
  const Index n2 = t.h2_dim();
  Subspace complement = orthocomplement(t.graph());
  // (a, b) in Gr(T)^perp  ->  (b, -a) in C^{n2+n1}.
  Matrix flipped(n2 + n1, complement.dim());
  flipped.topRows(n2) = complement.basis().bottomRows(n2);
  flipped.bottomRows(n1) = -complement.basis().topRows(n1);
  try {
    return GraphOperator::from_graph_subspace(Subspace::from_orthonormal(flipped), n2, n1, tol);
  } catch (const NotAGraph&) {
    throw AdjointIsRelation(
        "adjoint: flipped graph complement is a relation (domain is not the whole space)");
  }
}

std::vector<Complex> spectrum(const GraphOperator& t, const Tolerances& tol) {
  if (t.h1_dim() != t.h2_dim()) throw DimensionMismatch("spectrum: operator is not square");
  if (!t.everywhere_defined(tol))
    throw PreconditionViolated("spectrum: operator is not everywhere defined");
  if (t.h1_dim() == 0) return {};
  Eigen::ComplexEigenSolver<Matrix> es(t.to_matrix(tol), /*computeEigenvectors=*/false);
  std::vector<Complex> eig(es.eigenvalues().data(), es.eigenvalues().data() + t.h1_dim());
  std::sort(eig.begin(), eig.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return eig;
}

bool is_in_resolvent_set(const GraphOperator& t, Complex lambda, const Tolerances& tol) {
  if (t.h1_dim() != t.h2_dim())
    throw DimensionMismatch("is_in_resolvent_set: operator is not square");
  const Index n = t.h1_dim();
  // (T - lambda)(W u) = V u - lambda W u on the same domain.
  Matrix shifted = t.resolution_v() - lambda * t.resolution_w();
  return t.graph_dim() == n && rank_of(shifted, tol) == n;
}

Matrix characteristic_matrix(const GraphOperator& t) { return projector(t.graph()); }

Matrix characteristic_matrix_blocks(const Matrix& t) {
  const Index n1 = t.cols();
  const Index n2 = t.rows();
  Matrix half = inv_sqrt_one_plus_gram(t);  // (I + T*T)^{-1/2}
  Matrix d = half * half;
  Matrix m(n1 + n2, n1 + n2);
  m.topLeftCorner(n1, n1) = d;
  m.topRightCorner(n1, n2) = d * t.adjoint();
  m.bottomLeftCorner(n2, n1) = t * d;
  m.bottomRightCorner(n2, n2) = t * d * t.adjoint();
  return m;
}

Matrix relative_characteristic_matrix(const GraphOperator& t, const GraphOperator& s,
                                      const Tolerances& tol) {
  if (t.h1_dim() != s.h1_dim() || t.h2_dim() != s.h2_dim())
    throw DimensionMismatch("relative_characteristic_matrix: shapes differ");
  Matrix j_t = t.graph().basis();
  Matrix j_s = s.graph().basis();
  if (j_t.cols() != j_s.cols())
    throw NotTransversal("relative_characteristic_matrix: graph dimensions differ");
  Matrix overlap = j_s.adjoint() * j_t;
  // Both factors are partial isometries, so the overlap lives on the fixed
  // scale ||J_S^* J_T|| <= 1; invertibility is decided against that scale.
  if (overlap.cols() > 0) {
    SvdResult dec = svd(overlap);
    if (dec.singular_values(dec.singular_values.size() - 1) <= tol.rank_tol)
      throw NotTransversal("relative_characteristic_matrix: Gr(T) (+) Gr(S)^perp != H");
  }
  Matrix coeff;
  try {
    coeff = solve_invertible(overlap, Matrix(j_s.adjoint()), tol);
  } catch (const NotInvertible&) {
    throw NotTransversal("relative_characteristic_matrix: Gr(T) (+) Gr(S)^perp != H");
  }
  return j_t * coeff;
}

Matrix relative_characteristic_blocks(const Matrix& t, const Matrix& s, const Tolerances& tol) {
  if (t.rows() != s.rows() || t.cols() != s.cols())
    throw DimensionMismatch("relative_characteristic_blocks: shapes differ");
  const Index n1 = t.cols();
  const Index n2 = t.rows();
  Matrix core = Matrix::Identity(n1, n1) + s.adjoint() * t;
  if (n1 > 0) {
    SvdResult dec = svd(core);
    const double floor = tol.rank_tol * std::max(1.0, dec.singular_values(0));
    if (dec.singular_values(dec.singular_values.size() - 1) <= floor)
      throw NotTransversal("relative_characteristic_blocks: I + S*T is singular");
  }
  Matrix inv;
  try {
    inv = solve_invertible(core, Matrix(Matrix::Identity(n1, n1)), tol);
  } catch (const NotInvertible&) {
    throw NotTransversal("relative_characteristic_blocks: I + S*T is singular");
  }
  Matrix m(n1 + n2, n1 + n2);
  m.topLeftCorner(n1, n1) = inv;
  m.topRightCorner(n1, n2) = inv * s.adjoint();
  m.bottomLeftCorner(n2, n1) = t * inv;
  m.bottomRightCorner(n2, n2) = t * inv * s.adjoint();
  return m;
}

BoundReport check_left_invertible_perturbation(const GraphOperator& t, const Matrix& s,
                                               const Tolerances& tol) {
  if (!t.everywhere_defined(tol))
    throw PreconditionViolated(
        "check_left_invertible_perturbation: T must be everywhere defined");
  Matrix t_mat = t.to_matrix(tol);
  if (s.rows() != t_mat.rows() || s.cols() != t_mat.cols())
    throw DimensionMismatch("check_left_invertible_perturbation: perturbation shape differs");
  const double gamma_t = reduced_min_modulus(t, tol);
  const double s_norm = operator_norm(s);
  if (gamma_t <= tol.rank_tol * operator_norm(t_mat) || s_norm >= gamma_t)
    throw PreconditionViolated(
        "check_left_invertible_perturbation: ||S|| must stay below the reduced minimum modulus");
  GraphOperator perturbed = GraphOperator::from_matrix(t_mat + s, tol);
  const double gamma_p = reduced_min_modulus(perturbed, tol);
  BoundReport report;
  report.hypotheses_hold = true;
  report.lhs = std::abs(gamma_p - gamma_t);
  report.rhs = s_norm;
  report.bound_holds = gamma_p > 0.0 && report.lhs <= report.rhs + tol.gap_tol;
  return report;
}

BoundReport check_closed_range_duality(const GraphOperator& t, const Tolerances& tol) {
  if (!t.everywhere_defined(tol))
    throw PreconditionViolated("check_closed_range_duality: T must be everywhere defined");
  GraphOperator t_adj = adjoint(t, tol);
  const double ran_side = gap(orthocomplement(t.range(tol)), t_adj.kernel(tol));
  const double ker_side = gap(orthocomplement(t.kernel(tol)), t_adj.range(tol));
  BoundReport report;
  report.hypotheses_hold = true;
  report.lhs = std::max(ran_side, ker_side);
  report.rhs = tol.gap_tol;
  report.bound_holds = report.lhs <= report.rhs;
  std::ostringstream os;
  os << "gap((Ran T)^perp, Ker T*) = " << ran_side << ", gap((Ker T)^perp, Ran T*) = " << ker_side;
  report.detail = os.str();
  return report;
}

GraphOperator block_operator(const GraphOperator& a, const GraphOperator& b,
                             const Tolerances& tol) {
  if (a.h2_dim() != b.h1_dim() || a.h1_dim() != b.h2_dim())
    throw DimensionMismatch("block_operator: A and B must act between swapped spaces");
  const Index n1 = b.h1_dim();
  const Index n2 = a.h1_dim();
  const Index ka = a.graph_dim();
  const Index kb = b.graph_dim();
  Matrix w = Matrix::Zero(n1 + n2, kb + ka);
  w.topLeftCorner(n1, kb) = b.resolution_w();
  w.bottomRightCorner(n2, ka) = a.resolution_w();
  Matrix v = Matrix::Zero(n1 + n2, kb + ka);
  v.topRightCorner(n1, ka) = a.resolution_v();
  v.bottomLeftCorner(n2, kb) = b.resolution_v();
  return GraphOperator(n1 + n2, n1 + n2, w, v, tol);
}

namespace {

std::vector<Complex> matrix_spectrum(const Matrix& m) {
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  std::vector<Complex> eig(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  return eig;
}

/// Greedy nearest matching of two equal-size multisets; returns the largest
/// matched distance.
double greedy_match_distance(std::vector<Complex> lhs, std::vector<Complex> rhs) {
  double worst = 0.0;
  for (const Complex& value : lhs) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      const double d = std::abs(value - rhs[j]);
      if (d < best) {
        best = d;
        best_idx = j;
      }
    }
    worst = std::max(worst, best);
    rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(best_idx));
  }
  return worst;
}

}  // namespace

BoundReport check_spectrum_split(const Matrix& a, const Matrix& b, const Tolerances& tol) {
  if (a.rows() != b.cols() || a.cols() != b.rows())
    throw DimensionMismatch("check_spectrum_split: A and B must have swapped shapes");
  GraphOperator block =
      block_operator(GraphOperator::from_matrix(a, tol), GraphOperator::from_matrix(b, tol), tol);
  std::vector<Complex> squares;
  for (Complex lambda : spectrum(block, tol)) squares.push_back(lambda * lambda);

  std::vector<Complex> expected = matrix_spectrum(a * b);
  std::vector<Complex> ba = matrix_spectrum(b * a);
  expected.insert(expected.end(), ba.begin(), ba.end());

  double scale = 0.0;
  for (Complex lambda : squares) scale = std::max(scale, std::abs(lambda));
  for (Complex lambda : expected) scale = std::max(scale, std::abs(lambda));

  BoundReport report;
  report.hypotheses_hold = true;
  report.lhs = greedy_match_distance(squares, expected);
  report.rhs = 1e-8 * (1.0 + scale);
  report.bound_holds = report.lhs <= report.rhs;
  return report;
}

}  // namespace gaplab
