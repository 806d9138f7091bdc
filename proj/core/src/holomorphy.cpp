#include "gaplab/holomorphy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gaplab {

const char* to_string(Holomorphy h) {
  switch (h) {
    case Holomorphy::holomorphic: return "holomorphic";
    case Holomorphy::not_holomorphic: return "not_holomorphic";
    case Holomorphy::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

constexpr double kResidualNoiseFloor = 1e-13;
constexpr double kDecayFactor = 5.0;

GraphOperator eval_family(const OperatorFamily& f, Complex z) {
  try {
    return f(z);
  } catch (const EvaluationFailed&) {
    throw;
  } catch (const Error& e) {
    throw EvaluationFailed(std::string("family evaluation failed: ") + e.what(), z);
  }
}

Subspace eval_family(const SubspaceFamily& f, Complex z) {
  try {
    return f(z);
  } catch (const EvaluationFailed&) {
    throw;
  } catch (const NotComplementary&) {
    throw;
  } catch (const Error& e) {
    throw EvaluationFailed(std::string("subspace family evaluation failed: ") + e.what(), z);
  }
}

Matrix richardson(const Matrix& coarse, const Matrix& fine, double h_coarse, double h_fine) {
  // Central differences carry an O(h^2) error term.
  const double c2 = h_coarse * h_coarse;
  const double f2 = h_fine * h_fine;
  return (c2 * fine - f2 * coarse) / (c2 - f2);
}

}  // namespace

DifferentiabilityReport matrix_family_differentiability(const MatrixFamilyFn& f, Complex z0,
                                                        const Tolerances& tol) {
  tol.validate();
  const Matrix center = f(z0);
  const double scale = 1.0 + operator_norm(center);

  DifferentiabilityReport report;
  std::vector<Matrix> dx_estimates;
  std::vector<double> steps;
  const Complex iunit(0.0, 1.0);
  for (double base_step : tol.fd_steps) {
    const double h = base_step * scale;
    steps.push_back(h);
    Matrix dx = (f(z0 + h) - f(z0 - h)) / (2.0 * h);
    Matrix dy = (f(z0 + iunit * h) - f(z0 - iunit * h)) / (2.0 * h);
    dx_estimates.push_back(dx);
    const double residual = operator_norm(dx - dy / iunit) / (1.0 + operator_norm(dx));
    report.residuals.push_back(residual);
  }

  for (std::size_t i = 0; i + 1 < report.residuals.size(); ++i) {
    const double next = report.residuals[i + 1];
    report.step_ratios.push_back(next > 0.0 ? report.residuals[i] / next
                                            : std::numeric_limits<double>::infinity());
  }

  const std::size_t last = dx_estimates.size() - 1;
  report.derivative = last > 0 ? richardson(dx_estimates[last - 1], dx_estimates[last],
                                            steps[last - 1], steps[last])
                               : dx_estimates[0];
  const double res_fine = report.residuals.back();
  const double res_coarse = report.residuals.front();
  report.cr_residual = res_fine;

  const bool all_small =
      std::all_of(report.residuals.begin(), report.residuals.end(),
                  [&](double r) { return r < tol.cr_tol; });
  const bool decayed =
      res_coarse > kDecayFactor * res_fine || res_fine < kResidualNoiseFloor || all_small;
  if (res_fine < tol.cr_tol && decayed) {
    report.classification = Holomorphy::holomorphic;
  } else if (res_fine >= tol.cr_tol && res_coarse < kDecayFactor * res_fine) {
    report.classification = Holomorphy::not_holomorphic;
  } else {
    report.classification = Holomorphy::inconclusive;
  }
  report.mode = "matrix family";
  return report;
}

ContinuityReport gap_continuity_modulus(const OperatorFamily& f, Complex z0,
                                        const std::vector<double>& radii, int samples_per_circle,
                                        const Tolerances& tol) {
  if (radii.empty() || samples_per_circle < 1)
    throw PreconditionViolated("gap_continuity_modulus: need radii and samples");
  ContinuityReport report;
  report.radii = radii;
  std::sort(report.radii.begin(), report.radii.end(), std::greater<>());
  const GraphOperator center = eval_family(f, z0);
  for (double r : report.radii) {
    double modulus = 0.0;
    for (int k = 0; k < samples_per_circle; ++k) {
      const double angle = 2.0 * M_PI * k / samples_per_circle;
      const Complex z = z0 + Complex(r * std::cos(angle), r * std::sin(angle));
      modulus = std::max(modulus, operator_gap(eval_family(f, z), center));
    }
    report.moduli.push_back(modulus);
  }
  for (std::size_t i = 0; i + 1 < report.moduli.size(); ++i) {
    const double m0 = report.moduli[i];
    const double m1 = report.moduli[i + 1];
    const double log_r = std::log(report.radii[i] / report.radii[i + 1]);
    report.slopes.push_back(
        (m1 > 0.0 && m0 > 0.0) ? std::log(m0 / m1) / log_r
                               : std::numeric_limits<double>::infinity());
  }
  const double finest = report.moduli.back();
  const bool decaying = report.slopes.empty() || report.slopes.back() >= 0.2;
  report.continuous = finest <= 100.0 * tol.gap_tol || (decaying && finest < 0.5);
  return report;
}

DifferentiabilityReport relchar_differentiability(const OperatorFamily& f, Complex z0,
                                                  const Tolerances& tol) {
  const GraphOperator base = eval_family(f, z0);
  auto probe = [&](Complex z) {
    return relative_characteristic_matrix(eval_family(f, z), base, tol);
  };
  DifferentiabilityReport report = matrix_family_differentiability(probe, z0, tol);
  report.mode = "relative characteristic matrix";
  return report;
}

DifferentiabilityReport resolution_differentiability(const MatrixFamilyFn& w,
                                                     const MatrixFamilyFn& tw, Complex z0,
                                                     const Tolerances& tol,
                                                     const OperatorFamily* cross_check) {
  auto guarded_w = [&](Complex z) {
    Matrix value = w(z);
    if (rank_of(value, tol) != value.cols())
      throw NotLeftInvertible("resolution_differentiability: W(z) lost full column rank");
    return value;
  };
  if (cross_check != nullptr) {
    const Subspace span_w = Subspace::from_spanning(guarded_w(z0), tol);
    const Subspace dom = eval_family(*cross_check, z0).domain(tol);
    if (gap(span_w, dom) > tol.gap_tol)
      throw PreconditionViolated(
          "resolution_differentiability: Ran W(z0) does not match the family domain");
  }

  DifferentiabilityReport w_report = matrix_family_differentiability(guarded_w, z0, tol);
  DifferentiabilityReport tw_report = matrix_family_differentiability(tw, z0, tol);

  DifferentiabilityReport report;
  report.derivative = tw_report.derivative;
  report.cr_residual = std::max(w_report.cr_residual, tw_report.cr_residual);
  report.residuals.resize(w_report.residuals.size());
  for (std::size_t i = 0; i < report.residuals.size(); ++i)
    report.residuals[i] = std::max(w_report.residuals[i], tw_report.residuals[i]);
  report.step_ratios = tw_report.step_ratios;
  if (w_report.classification == Holomorphy::holomorphic &&
      tw_report.classification == Holomorphy::holomorphic) {
    report.classification = Holomorphy::holomorphic;
  } else if (w_report.classification == Holomorphy::not_holomorphic ||
             tw_report.classification == Holomorphy::not_holomorphic) {
    report.classification = Holomorphy::not_holomorphic;
  } else {
    report.classification = Holomorphy::inconclusive;
  }
  report.mode = "resolution pair";
  return report;
}

DifferentiabilityReport subspace_family_differentiability(const SubspaceFamily& x, Complex z0,
                                                          const Tolerances& tol) {
  const Subspace complement = orthocomplement(eval_family(x, z0));
  auto probe = [&](Complex z) { return oblique_projection(eval_family(x, z), complement, tol); };
  DifferentiabilityReport report = matrix_family_differentiability(probe, z0, tol);
  report.mode = "oblique projection onto moving subspace";
  return report;
}

PropertyReport check_schwarz_reflection(const OperatorFamily& f, Complex z0,
                                        const Tolerances& tol) {
  PropertyReport report;
  report.direct = relchar_differentiability(f, z0, tol);
  OperatorFamily reflected = reflect(f, tol);
  report.mirrored = relchar_differentiability(reflected, std::conj(z0), tol);

  const bool classes_match = report.direct.classification == report.mirrored.classification;
  constexpr double floor = 1e-10;
  const double r_direct = std::max(report.direct.cr_residual, floor);
  const double r_mirror = std::max(report.mirrored.cr_residual, floor);
  const bool residuals_match = r_direct / r_mirror <= 10.0 && r_mirror / r_direct <= 10.0;
  report.passed = classes_match && residuals_match;
  std::ostringstream os;
  os << "direct " << to_string(report.direct.classification) << " (residual "
     << report.direct.cr_residual << "), reflected " << to_string(report.mirrored.classification)
     << " (residual " << report.mirrored.cr_residual << ")";
  report.detail = os.str();
  return report;
}

namespace {

bool is_bijective(const GraphOperator& op, const Tolerances& tol) {
  return op.kernel(tol).dim() == 0 && op.range(tol).dim() == op.h2_dim();
}

std::vector<Complex> squared_resolvent_candidates(const GraphOperator& ab,
                                                  const GraphOperator& ba,
                                                  const std::vector<Complex>& user,
                                                  const Tolerances& tol) {
  std::vector<Complex> lambdas = user;
  std::vector<Complex> eigs;
  auto collect = [&](const GraphOperator& op) {
    if (op.h1_dim() == op.h2_dim() && op.everywhere_defined(tol)) {
      std::vector<Complex> sp = spectrum(op, tol);
      eigs.insert(eigs.end(), sp.begin(), sp.end());
    }
  };
  collect(ab);
  collect(ba);
  if (!eigs.empty()) {
    std::sort(eigs.begin(), eigs.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    double scale = 1.0;
    for (Complex e : eigs) scale = std::max(scale, std::abs(e));
    for (std::size_t i = 0; i + 1 < eigs.size(); ++i) {
      if (std::abs(eigs[i + 1] - eigs[i]) > 1e-8 * scale)
        lambdas.push_back(std::sqrt((eigs[i] + eigs[i + 1]) / 2.0));
    }
    lambdas.push_back(std::sqrt(Complex(2.0 * scale + 1.0, 0.0)));
    lambdas.push_back(std::sqrt(eigs.front() - 1.0 - scale));
  } else {
    lambdas.push_back(Complex(1.0, 0.0));
  }
  return lambdas;
}

}  // namespace

PreconditionReport check_product_theorem_preconditions(
    const OperatorFamily& a, const OperatorFamily& b, const std::vector<Complex>& sample_zs,
    ProductCriterion mode, const Tolerances& tol, const std::vector<Complex>& lambda_candidates) {
  if (b.h2_dim() != a.h1_dim())
    throw DimensionMismatch("check_product_theorem_preconditions: shapes do not compose");
  PreconditionReport report;
  if (sample_zs.empty()) {
    report.detail = "no samples";
    return report;
  }

  if (mode == ProductCriterion::common_squared_resolvent) {
    GraphOperator a0 = eval_family(a, sample_zs.front());
    GraphOperator b0 = eval_family(b, sample_zs.front());
    std::vector<Complex> lambdas = squared_resolvent_candidates(
        compose(a0, b0, tol), compose(b0, a0, tol), lambda_candidates, tol);
    // The theorem needs a single lambda that works for every sample.
    for (Complex lambda : lambdas) {
      bool works = true;
      for (Complex z : sample_zs) {
        GraphOperator az = eval_family(a, z);
        GraphOperator bz = eval_family(b, z);
        if (!is_in_resolvent_set(compose(az, bz, tol), lambda * lambda, tol) ||
            !is_in_resolvent_set(compose(bz, az, tol), lambda * lambda, tol)) {
          works = false;
          break;
        }
      }
      if (works) {
        report.lambda = lambda;
        break;
      }
    }
    for (Complex z : sample_zs) {
      SampleCheck check{z, report.lambda.has_value(), ""};
      if (report.lambda) {
        std::ostringstream os;
        os << "lambda^2 = " << (*report.lambda * *report.lambda) << " in rs(AB) and rs(BA)";
        check.detail = os.str();
      } else {
        check.detail = "no common lambda found among candidates";
      }
      report.samples.push_back(std::move(check));
    }
    report.all_hold = report.lambda.has_value();
    return report;
  }

  report.all_hold = true;
  for (Complex z : sample_zs) {
    GraphOperator az = eval_family(a, z);
    GraphOperator bz = eval_family(b, z);
    SampleCheck check{z, false, ""};
    switch (mode) {
      case ProductCriterion::bounded_or_invertible_factor: {
        const bool a_bounded = az.everywhere_defined(tol);
        const bool b_bijective = is_bijective(bz, tol);
        check.holds = a_bounded || b_bijective;
        check.detail = a_bounded ? "A everywhere defined"
                                 : (b_bijective ? "B bijective" : "neither factor qualifies");
        break;
      }
      case ProductCriterion::densely_defined_product: {
        const bool a_full = az.everywhere_defined(tol);
        const bool ab_full = compose(az, bz, tol).everywhere_defined(tol);
        check.holds = a_full && ab_full;
        check.detail = check.holds ? "A and AB everywhere defined"
                                   : "A or AB has a proper domain";
        break;
      }
      case ProductCriterion::domain_range_cover: {
        Subspace cover = sum_subspace(az.domain(tol), bz.range(tol), tol);
        check.holds = cover.dim() == az.h1_dim();
        if (!check.holds) {
          Subspace missing = orthocomplement(cover);
          std::ostringstream os;
          os << "Dom A + Ran B has dimension " << cover.dim() << " of " << az.h1_dim()
             << "; witness direction exists (dim " << missing.dim() << ")";
          check.detail = os.str();
        } else {
          check.detail = "Dom A + Ran B covers the middle space";
        }
        break;
      }
      case ProductCriterion::common_squared_resolvent: break;  // handled above
    }
    report.all_hold = report.all_hold && check.holds;
    report.samples.push_back(std::move(check));
  }
  return report;
}

namespace {

/// The block shear [[I, 0], [T, I]] on C^{n1+n2} with domain Dom T (+) C^{n2}.
GraphOperator shear_block(const GraphOperator& t, const Tolerances& tol) {
  const Index n1 = t.h1_dim();
  const Index n2 = t.h2_dim();
  const Index k = t.graph_dim();
  Matrix w = Matrix::Zero(n1 + n2, k + n2);
  w.topLeftCorner(n1, k) = t.resolution_w();
  w.bottomRightCorner(n2, n2) = Matrix::Identity(n2, n2);
  Matrix v = Matrix::Zero(n1 + n2, k + n2);
  v.topLeftCorner(n1, k) = t.resolution_w();
  v.bottomLeftCorner(n2, k) = t.resolution_v();
  v.bottomRightCorner(n2, n2) = Matrix::Identity(n2, n2);
  return GraphOperator(n1 + n2, n1 + n2, w, v, tol);
}

}  // namespace

PreconditionReport check_sum_theorem(const OperatorFamily& t, const OperatorFamily& s,
                                     const std::vector<Complex>& sample_zs,
                                     const Tolerances& tol) {
  if (t.h1_dim() != s.h1_dim() || t.h2_dim() != s.h2_dim())
    throw DimensionMismatch("check_sum_theorem: shapes differ");
  PreconditionReport report;
  report.all_hold = true;
  for (Complex z : sample_zs) {
    GraphOperator tz = eval_family(t, z);
    GraphOperator sz = eval_family(s, z);
    SampleCheck check{z, false, ""};

    Subspace cover = sum_subspace(tz.domain(tol), sz.domain(tol), tol);
    const bool domains_cover = cover.dim() == tz.h1_dim();

    // Reduction of the sum to a product of block shears.
    GraphOperator a_blk = shear_block(tz, tol);
    GraphOperator b_blk = shear_block(sz, tol);
    GraphOperator c_blk = shear_block(add(tz, sz, tol), tol);
    const double identity_gap = operator_gap(compose(a_blk, b_blk, tol), c_blk);
    const bool reduction_ok = identity_gap <= tol.gap_tol;

    check.holds = domains_cover && reduction_ok;
    std::ostringstream os;
    os << "Dom T + Dom S " << (domains_cover ? "covers" : "does not cover")
       << " H1; shear reduction gap " << identity_gap;
    check.detail = os.str();
    report.all_hold = report.all_hold && check.holds;
    report.samples.push_back(std::move(check));
  }
  return report;
}

double riesz_distance(const Matrix& t, const Matrix& s) {
  if (t.rows() != s.rows() || t.cols() != s.cols())
    throw DimensionMismatch("riesz_distance: shapes differ");
  return operator_norm(t * inv_sqrt_one_plus_gram(t) - s * inv_sqrt_one_plus_gram(s));
}

}  // namespace gaplab
