#pragma once

#include "gaplab/families.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gaplab {

enum class Holomorphy { holomorphic, not_holomorphic, inconclusive };

const char* to_string(Holomorphy h);

/// Verdict of a finite-difference complex-differentiability probe.
///
/// The derivative estimate is the Richardson-extrapolated d/dx difference
/// quotient of the probed bounded-valued function (for a holomorphic family
/// this is the complex derivative).  cr_residual compares the two coordinate
/// directions, ||d/dx - (1/i) d/dy|| / (1 + ||d/dx||), at the finest step;
/// per-step residuals and their consecutive ratios are kept so a true
/// Cauchy-Riemann failure (residual plateau) can be told apart from
/// floating-point noise (residual decay).
struct DifferentiabilityReport {
  Matrix derivative;
  double cr_residual = 0.0;
  std::vector<double> residuals;
  std::vector<double> step_ratios;
  Holomorphy classification = Holomorphy::inconclusive;
  std::string mode;
};

struct ContinuityReport {
  std::vector<double> radii;
  std::vector<double> moduli;
  std::vector<double> slopes;
  bool continuous = false;
};

struct PropertyReport {
  bool passed = false;
  std::string detail;
  DifferentiabilityReport direct;
  DifferentiabilityReport mirrored;
};

struct SampleCheck {
  Complex z;
  bool holds = false;
  std::string detail;
};

struct PreconditionReport {
  std::vector<SampleCheck> samples;
  bool all_hold = false;
  std::optional<Complex> lambda;  // common resolvent-point searches only
  std::string detail;
};

using MatrixFamilyFn = std::function<Matrix(Complex)>;

/// Central finite differences along 1 and i for each configured step,
/// Richardson-extrapolated.  Steps are scaled by (1 + ||F(z0)||) so probes of
/// large families stay conditioned.  A holomorphic verdict needs the residual
/// below cr_tol at the finest step and decaying (or at noise level)
/// throughout; a residual plateau above cr_tol reads as a genuine
/// Cauchy-Riemann failure.
DifferentiabilityReport matrix_family_differentiability(const MatrixFamilyFn& f, Complex z0,
                                                        const Tolerances& tol = {});

/// Max gap over sampled circles of shrinking radius; continuous when the
/// modulus decays toward 0.
ContinuityReport gap_continuity_modulus(const OperatorFamily& f, Complex z0,
                                        const std::vector<double>& radii = {1e-1, 1e-2, 1e-3},
                                        int samples_per_circle = 8, const Tolerances& tol = {});

/// Differentiability of z -> M_{F(z), F(z0)}, the projection onto Gr(F(z))
/// along Gr(F(z0))^perp.  This is the bounded-valued function that decides
/// operator holomorphy without picking any resolution, and it works when the
/// resolvent set is empty.  Throws NotTransversal when a probe point leaves
/// the transversal neighbourhood.
DifferentiabilityReport relchar_differentiability(const OperatorFamily& f, Complex z0,
                                                  const Tolerances& tol = {});

/// Differentiability of a resolution pair: W(z) (left invertible onto the
/// domain) and T(z) W(z) are both probed; the family verdict needs both.
/// When `cross_check` is supplied, Ran W(z0) is validated against its domain.
DifferentiabilityReport resolution_differentiability(const MatrixFamilyFn& w,
                                                     const MatrixFamilyFn& tw, Complex z0,
                                                     const Tolerances& tol = {},
                                                     const OperatorFamily* cross_check = nullptr);

/// Differentiability of z -> P_{X(z), Y} with Y the orthocomplement of
/// X(z0).  Probing through this oblique projection (not the orthogonal one,
/// which drags conj(z) along) is what makes the verdict meaningful.
DifferentiabilityReport subspace_family_differentiability(const SubspaceFamily& x, Complex z0,
                                                          const Tolerances& tol = {});

/// The reflected family z -> F*(conj z) must have the same verdict at
/// conj(z0) as F has at z0, with residuals within a factor 10 (both clamped
/// at a 1e-10 noise floor).
PropertyReport check_schwarz_reflection(const OperatorFamily& f, Complex z0,
                                        const Tolerances& tol = {});

enum class ProductCriterion {
  /// B(z) bijective, or A(z) everywhere defined.
  bounded_or_invertible_factor,
  /// A(z) and A(z)B(z) everywhere defined.
  densely_defined_product,
  /// One lambda with lambda^2 in rs(A B) and rs(B A) across all samples.
  common_squared_resolvent,
  /// Dom A(z) + Ran B(z) is the whole middle space.
  domain_range_cover,
};

/// Per-sample hypothesis check for the product-holomorphy criteria.  For the
/// common-resolvent search, candidate lambdas are the supplied list plus
/// midpoints of spectral gaps at the first sample; the found lambda (if any)
/// is reported.
PreconditionReport check_product_theorem_preconditions(
    const OperatorFamily& a, const OperatorFamily& b, const std::vector<Complex>& sample_zs,
    ProductCriterion mode, const Tolerances& tol = {},
    const std::vector<Complex>& lambda_candidates = {});

/// Sum-holomorphy hypotheses: Dom T(z) + Dom S(z) is everything, and the
/// reduction to a product of block shears composes back to the sum within
/// gap_tol.
PreconditionReport check_sum_theorem(const OperatorFamily& t, const OperatorFamily& s,
                                     const std::vector<Complex>& sample_zs,
                                     const Tolerances& tol = {});

/// Distance of bounded transforms ||T(I+T*T)^{-1/2} - S(I+S*S)^{-1/2}||;
/// induces a strictly stronger topology than the gap.
double riesz_distance(const Matrix& t, const Matrix& s);

}  // namespace gaplab
