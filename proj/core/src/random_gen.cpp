#include "gaplab/random_gen.hpp"

#include <cmath>

namespace gaplab {

std::uint64_t derive_seed(std::uint64_t seed, const std::string& label) {
  // FNV-1a over the label, mixed with the base seed.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h ^ (seed * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull);
}

Complex random_complex(Rng& rng, double scale) {
  std::normal_distribution<double> gauss(0.0, scale / std::sqrt(2.0));
  return {gauss(rng), gauss(rng)};
}

Complex random_in_disc(Rng& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double angle = 2.0 * M_PI * unit(rng);
  return {r * std::cos(angle), r * std::sin(angle)};
}

Matrix random_matrix(Rng& rng, Index rows, Index cols, double scale) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = random_complex(rng, scale);
  return m;
}

Matrix random_unitary(Rng& rng, Index n) {
  if (n == 0) return Matrix(0, 0);
  return orthonormal_columns(random_matrix(rng, n, n));
}

Matrix random_well_conditioned(Rng& rng, Index n, double cond_limit) {
  for (;;) {
    Matrix m = random_matrix(rng, n, n);
    SvdResult dec = svd(m);
    const double smin = dec.singular_values(dec.singular_values.size() - 1);
    if (smin > 0.0 && dec.singular_values(0) / smin < cond_limit) return m;
  }
}

Subspace random_subspace(Rng& rng, Index n, Index k) {
  if (k == 0) return Subspace::zero(n);
  return Subspace::from_orthonormal(orthonormal_columns(random_matrix(rng, n, k)));
}

std::pair<Subspace, Subspace> random_complementary_pair(Rng& rng, Index n, Index k,
                                                        double projector_norm_limit) {
  for (;;) {
    Subspace x = random_subspace(rng, n, k);
    Subspace y = random_subspace(rng, n, n - k);
    try {
      if (operator_norm(oblique_projection(x, y)) <= projector_norm_limit) return {x, y};
    } catch (const NotComplementary&) {
    }
  }
}

Subspace perturb_subspace(Rng& rng, const Subspace& x, double eps) {
  if (x.dim() == 0) return x;
  const Index n = x.ambient_dim();
  Matrix e = random_matrix(rng, n, n);
  const double norm = operator_norm(e);
  if (norm > 0.0) e /= norm;
  Matrix moved = (Matrix::Identity(n, n) + eps * e) * x.basis();
  return Subspace::from_spanning(moved);
}

GraphOperator random_partial_operator(Rng& rng, Index n1, Index n2, Index k,
                                      const Tolerances& tol) {
  Matrix w = orthonormal_columns(random_matrix(rng, n1, k));
  Matrix v = random_matrix(rng, n2, k);
  return GraphOperator(n1, n2, w, v, tol);
}

RationalMatrixFamily random_polynomial_family(Rng& rng, Index rows, Index cols, int degree,
                                              double scale) {
  std::vector<RationalEntry> entries;
  entries.reserve(static_cast<std::size_t>(rows * cols));
  for (Index i = 0; i < rows * cols; ++i) {
    RationalEntry entry;
    entry.num.clear();
    for (int d = 0; d <= degree; ++d) entry.num.push_back(random_complex(rng, scale));
    entries.push_back(std::move(entry));
  }
  return RationalMatrixFamily(rows, cols, std::move(entries));
}

RationalMatrixFamily random_rational_family(Rng& rng, Index rows, Index cols, int degree,
                                            double scale) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<RationalEntry> entries;
  entries.reserve(static_cast<std::size_t>(rows * cols));
  for (Index i = 0; i < rows * cols; ++i) {
    RationalEntry entry;
    entry.num.clear();
    const int num_degree = degree > 0 ? degree - 1 : 0;
    for (int d = 0; d <= num_degree; ++d) entry.num.push_back(random_complex(rng, scale));
    if (degree > 0 && unit(rng) < 0.5) {
      entry.den = {Complex(1.0, 0.0), random_in_disc(rng, 0.3)};
    }
    entries.push_back(std::move(entry));
  }
  return RationalMatrixFamily(rows, cols, std::move(entries));
}

}  // namespace gaplab
