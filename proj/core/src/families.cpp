#include "gaplab/families.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace gaplab {

Complex eval_poly(const std::vector<Complex>& coeffs, Complex z) {
  Complex acc(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

namespace {

double poly_scale(const std::vector<Complex>& coeffs, Complex z) {
  double scale = 0.0;
  double zpow = 1.0;
  const double az = std::abs(z);
  for (const Complex& c : coeffs) {
    scale += std::abs(c) * zpow;
    zpow *= az;
  }
  return scale;
}

bool identically_zero(const std::vector<Complex>& coeffs) {
  for (const Complex& c : coeffs)
    if (c != Complex(0.0, 0.0)) return false;
  return true;
}

}  // namespace

RationalMatrixFamily::RationalMatrixFamily(Index rows, Index cols,
                                           std::vector<RationalEntry> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (static_cast<Index>(entries_.size()) != rows_ * cols_)
    throw DimensionMismatch("RationalMatrixFamily: entry count does not match shape");
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) {
      const RationalEntry& e = entries_[i * cols_ + j];
      if (e.den.empty() || identically_zero(e.den)) {
        std::ostringstream os;
        os << "RationalMatrixFamily: entry (" << i << "," << j
           << ") has an identically zero denominator";
        throw ParseError(os.str());
      }
    }
}

RationalMatrixFamily RationalMatrixFamily::constant(const Matrix& m) {
  std::vector<RationalEntry> entries;
  entries.reserve(static_cast<std::size_t>(m.rows() * m.cols()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) entries.push_back({{m(i, j)}, {Complex(1.0, 0.0)}});
  return RationalMatrixFamily(m.rows(), m.cols(), std::move(entries));
}

RationalMatrixFamily RationalMatrixFamily::pencil(const Matrix& m0, const Matrix& m1) {
  if (m0.rows() != m1.rows() || m0.cols() != m1.cols())
    throw DimensionMismatch("RationalMatrixFamily::pencil: shapes differ");
  std::vector<RationalEntry> entries;
  entries.reserve(static_cast<std::size_t>(m0.rows() * m0.cols()));
  for (Index i = 0; i < m0.rows(); ++i)
    for (Index j = 0; j < m0.cols(); ++j)
      entries.push_back({{m0(i, j), m1(i, j)}, {Complex(1.0, 0.0)}});
  return RationalMatrixFamily(m0.rows(), m0.cols(), std::move(entries));
}

Matrix RationalMatrixFamily::eval(Complex z) const {
  Matrix out(rows_, cols_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) {
      const RationalEntry& e = entries_[i * cols_ + j];
      const Complex den = eval_poly(e.den, z);
      const double scale = poly_scale(e.den, z);
      if (std::abs(den) <= 1e-12 * scale) {
        std::ostringstream os;
        os << "rational family: pole at entry (" << i << "," << j << ")";
        throw EvaluationFailed(os.str(), z);
      }
      out(i, j) = eval_poly(e.num, z) / den;
    }
  return out;
}

OperatorFamily::OperatorFamily(Evaluator evaluator, Index h1_dim, Index h2_dim,
                               std::string provenance)
    : evaluator_(std::move(evaluator)),
      h1_dim_(h1_dim),
      h2_dim_(h2_dim),
      provenance_(std::move(provenance)) {}

OperatorFamily OperatorFamily::constant(GraphOperator value) {
  const Index n1 = value.h1_dim();
  const Index n2 = value.h2_dim();
  return OperatorFamily([value = std::move(value)](Complex) { return value; }, n1, n2,
                        "constant");
}

OperatorFamily OperatorFamily::from_rational(RationalMatrixFamily r, Tolerances tol) {
  const Index n1 = r.cols();
  const Index n2 = r.rows();
  return OperatorFamily(
      [r = std::move(r), tol](Complex z) { return GraphOperator::from_matrix(r.eval(z), tol); },
      n1, n2, "rational matrix");
}

OperatorFamily OperatorFamily::from_resolution(RationalMatrixFamily w, RationalMatrixFamily v,
                                               Tolerances tol) {
  if (w.cols() != v.cols())
    throw DimensionMismatch("from_resolution: W and V have different column counts");
  const Index n1 = w.rows();
  const Index n2 = v.rows();
  return OperatorFamily(
      [w = std::move(w), v = std::move(v), tol](Complex z) {
        return GraphOperator(w.rows(), v.rows(), w.eval(z), v.eval(z), tol);
      },
      n1, n2, "graph resolution");
}

OperatorFamily OperatorFamily::resolvent(Matrix t, Tolerances tol) {
  if (t.rows() != t.cols()) throw DimensionMismatch("resolvent: matrix is not square");
  const Index n = t.rows();
  return OperatorFamily(
      [t = std::move(t), tol](Complex z) {
        Matrix shifted = z * Matrix::Identity(t.rows(), t.rows()) - t;
        return inverse(GraphOperator::from_matrix(shifted, tol), tol);
      },
      n, n, "resolvent");
}

SubspaceFamily::SubspaceFamily(Evaluator evaluator, Index ambient_dim, std::string provenance)
    : evaluator_(std::move(evaluator)),
      ambient_dim_(ambient_dim),
      provenance_(std::move(provenance)) {}

SubspaceFamily SubspaceFamily::graph_of(OperatorFamily family) {
  const Index ambient = family.h1_dim() + family.h2_dim();
  std::string provenance = "graph of " + family.provenance();
  return SubspaceFamily([family = std::move(family)](Complex z) { return family(z).graph(); },
                        ambient, std::move(provenance));
}

OperatorFamily product_family(OperatorFamily a, OperatorFamily b, Tolerances tol) {
  if (b.h2_dim() != a.h1_dim())
    throw DimensionMismatch("product_family: inner dimensions do not match");
  const Index n1 = b.h1_dim();
  const Index n2 = a.h2_dim();
  return OperatorFamily(
      [a = std::move(a), b = std::move(b), tol](Complex z) { return compose(a(z), b(z), tol); },
      n1, n2, "product");
}

OperatorFamily sum_family(OperatorFamily t, OperatorFamily s, Tolerances tol) {
  if (t.h1_dim() != s.h1_dim() || t.h2_dim() != s.h2_dim())
    throw DimensionMismatch("sum_family: shapes differ");
  const Index n1 = t.h1_dim();
  const Index n2 = t.h2_dim();
  return OperatorFamily(
      [t = std::move(t), s = std::move(s), tol](Complex z) { return add(t(z), s(z), tol); }, n1,
      n2, "sum");
}

OperatorFamily reflect(OperatorFamily f, Tolerances tol) {
  const Index n1 = f.h2_dim();
  const Index n2 = f.h1_dim();
  std::string provenance = "reflection of " + f.provenance();
  return OperatorFamily(
      [f = std::move(f), tol](Complex z) { return adjoint(f(std::conj(z)), tol); }, n1, n2,
      std::move(provenance));
}

SubspaceFamily kernel_family(OperatorFamily s, Tolerances tol) {
  const Index ambient = s.h1_dim();
  std::string provenance = "kernel of " + s.provenance();
  return SubspaceFamily(
      [s = std::move(s), tol](Complex z) {
        GraphOperator op = s(z);
        if (!op.everywhere_defined(tol))
          throw NotSurjective("kernel_family: operator is not everywhere defined");
        if (op.range(tol).dim() != op.h2_dim())
          throw NotSurjective("kernel_family: operator is not surjective");
        return op.kernel(tol);
      },
      ambient, std::move(provenance));
}

}  // namespace gaplab
