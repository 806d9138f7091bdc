#pragma once

#include "gaplab/families.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace gaplab {

using Rng = std::mt19937_64;

/// Stable seed derivation so every property stream is independent of the
/// order the suites run in.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& label);

Complex random_complex(Rng& rng, double scale = 1.0);
Complex random_in_disc(Rng& rng, double radius);

/// Entries i.i.d. complex Gaussian with the given scale.
Matrix random_matrix(Rng& rng, Index rows, Index cols, double scale = 1.0);

Matrix random_unitary(Rng& rng, Index n);

/// Invertible with condition number kept moderate (resampled otherwise).
Matrix random_well_conditioned(Rng& rng, Index n, double cond_limit = 1e3);

Subspace random_subspace(Rng& rng, Index n, Index k);

/// Complementary pair (X, Y) with dim X = k, projector norm below the given
/// bound (resampled otherwise).
std::pair<Subspace, Subspace> random_complementary_pair(Rng& rng, Index n, Index k,
                                                        double projector_norm_limit = 10.0);

/// Small rotation: span((I + eps E) B) for a random unit-norm E.
Subspace perturb_subspace(Rng& rng, const Subspace& x, double eps);

/// Partial-domain operator with a k-dimensional domain in C^{n1}.
GraphOperator random_partial_operator(Rng& rng, Index n1, Index n2, Index k,
                                      const Tolerances& tol = {});

/// Polynomial matrix family (denominators 1) of the given degree.
RationalMatrixFamily random_polynomial_family(Rng& rng, Index rows, Index cols, int degree,
                                              double scale = 1.0);

/// Rational matrix family; denominators are 1 + c z with |c| <= 0.3, so all
/// poles stay well outside the unit disc.
RationalMatrixFamily random_rational_family(Rng& rng, Index rows, Index cols, int degree,
                                            double scale = 1.0);

}  // namespace gaplab
