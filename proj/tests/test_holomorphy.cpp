#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gaplab/holomorphy.hpp"
#include "gaplab/random_gen.hpp"

#include <cmath>

using namespace gaplab;

namespace {

const Tolerances tol;

Matrix scalar(Complex v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return m;
}

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = Complex(a, 0);
  m(1, 1) = Complex(b, 0);
  return m;
}

OperatorFamily line_family() {
  RationalMatrixFamily r(1, 1,
                         {RationalEntry{{Complex(0, 0), Complex(1, 0)}, {Complex(1, 0)}}});
  return OperatorFamily::from_rational(r, tol);
}

OperatorFamily conjugate_family() {
  return OperatorFamily(
      [](Complex z) { return GraphOperator::from_matrix(scalar(std::conj(z))); }, 1, 1,
      "conjugate");
}

SubspaceFamily kernel_line() {
  RationalMatrixFamily row(1, 2,
                           {RationalEntry{{Complex(1, 0)}, {Complex(1, 0)}},
                            RationalEntry{{Complex(0, 0), Complex(1, 0)}, {Complex(1, 0)}}});
  return kernel_family(OperatorFamily::from_rational(row, tol), tol);
}

}  // namespace

TEST_CASE("matrix family differentiability on scalars") {
  auto linear = matrix_family_differentiability([](Complex z) { return scalar(z); },
                                                Complex(0, 0), tol);
  CHECK(linear.classification == Holomorphy::holomorphic);
  CHECK(std::abs(linear.derivative(0, 0) - Complex(1, 0)) < 1e-9);
  CHECK(linear.cr_residual < 1e-9);

  auto conj = matrix_family_differentiability([](Complex z) { return scalar(std::conj(z)); },
                                              Complex(0, 0), tol);
  CHECK(conj.classification == Holomorphy::not_holomorphic);
  CHECK(std::abs(conj.derivative(0, 0) - Complex(1, 0)) < 1e-9);  // d/dx of conj(z)
  CHECK(conj.cr_residual == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("matrix family differentiability of a resolvent") {
  Matrix t = diag2(1, 2);
  auto probe = [&](Complex z) -> Matrix {
    return (z * Matrix::Identity(2, 2) - t).inverse();
  };
  auto report = matrix_family_differentiability(probe, Complex(0, 0), tol);
  CHECK(report.classification == Holomorphy::holomorphic);
  Matrix expected = -diag2(1, 0.25);  // -T^{-2} at z = 0
  CHECK(operator_norm(report.derivative - expected) < 1e-6);
}

TEST_CASE("gap continuity modulus") {
  OperatorFamily constant =
      OperatorFamily::constant(GraphOperator::from_matrix(diag2(1, 2)));
  ContinuityReport flat = gap_continuity_modulus(constant, Complex(0, 0), {1e-1, 1e-2}, 6, tol);
  CHECK(flat.continuous);
  CHECK(flat.moduli[0] < 1e-12);

  ContinuityReport slope =
      gap_continuity_modulus(line_family(), Complex(0, 0), {1e-1, 1e-2, 1e-3}, 8, tol);
  CHECK(slope.continuous);
  CHECK(slope.moduli[0] == doctest::Approx(0.1 / std::sqrt(1.01)).epsilon(1e-10));

  RationalMatrixFamily steep(
      1, 1, {RationalEntry{{Complex(0, 0), Complex(100, 0)}, {Complex(1, 0)}}});
  ContinuityReport degraded = gap_continuity_modulus(OperatorFamily::from_rational(steep, tol),
                                                     Complex(0, 0), {1e-1, 1e-2, 1e-3}, 8, tol);
  CHECK(degraded.continuous);
  CHECK(degraded.moduli[0] == doctest::Approx(10.0 / std::sqrt(101.0)).epsilon(1e-10));
}

TEST_CASE("relchar differentiability") {
  auto constant = relchar_differentiability(
      OperatorFamily::constant(GraphOperator::from_matrix(diag2(1, 2))), Complex(0.3, -0.2), tol);
  CHECK(constant.classification == Holomorphy::holomorphic);
  CHECK(operator_norm(constant.derivative) < 1e-9);

  auto linear = relchar_differentiability(line_family(), Complex(0, 0), tol);
  CHECK(linear.classification == Holomorphy::holomorphic);
  Matrix expected = Matrix::Zero(2, 2);
  expected(1, 0) = Complex(1, 0);  // M_{F(z),F(0)} = [[1,0],[z,0]]
  CHECK(operator_norm(linear.derivative - expected) < 1e-8);

  auto conj = relchar_differentiability(conjugate_family(), Complex(0, 0), tol);
  CHECK(conj.classification == Holomorphy::not_holomorphic);
}

TEST_CASE("resolution differentiability") {
  auto trivial = resolution_differentiability(
      [](Complex) { return Matrix::Identity(2, 2); },
      [](Complex z) { return Matrix(z * Matrix::Identity(2, 2)); }, Complex(0.1, 0.2), tol);
  CHECK(trivial.classification == Holomorphy::holomorphic);

  // Resolvent of diag(1,2) resolved through W(z) = (z - T)(5 - T)^{-1}.
  Matrix t = diag2(1, 2);
  Matrix anchor = (5 * Matrix::Identity(2, 2) - t).inverse();
  auto w = [&](Complex z) -> Matrix { return (z * Matrix::Identity(2, 2) - t) * anchor; };
  auto tw = [&](Complex) -> Matrix { return anchor; };
  auto away = resolution_differentiability(w, tw, Complex(4, 0.5), tol);
  CHECK(away.classification == Holomorphy::holomorphic);
  CHECK_THROWS_AS(resolution_differentiability(w, tw, Complex(1, 0), tol), NotLeftInvertible);

  auto bent = resolution_differentiability(
      [](Complex z) { return scalar(std::conj(z) + 2.0); }, [](Complex) { return scalar(1); },
      Complex(0, 0), tol);
  CHECK(bent.classification == Holomorphy::not_holomorphic);
}

TEST_CASE("subspace family differentiability") {
  auto moving = subspace_family_differentiability(kernel_line(), Complex(0, 0), tol);
  CHECK(moving.classification == Holomorphy::holomorphic);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 1) = Complex(-1, 0);  // P_{X_z,Y} = [[0,-z],[0,1]]
  CHECK(operator_norm(moving.derivative - expected) < 1e-8);

  SubspaceFamily frozen([](Complex) { return Subspace::full(2); }, 2, "constant");
  auto still = subspace_family_differentiability(frozen, Complex(0.5, 0.5), tol);
  CHECK(still.classification == Holomorphy::holomorphic);
  CHECK(operator_norm(still.derivative) < 1e-10);

  auto ortho = matrix_family_differentiability(
      [line = kernel_line()](Complex z) { return projector(line(z)); }, Complex(0, 0), tol);
  CHECK(ortho.classification == Holomorphy::not_holomorphic);
  CHECK(std::abs(ortho.cr_residual - 1.0) < 0.2);
}

TEST_CASE("classification distinguishes decay from plateau") {
  // With an extreme threshold the honest truncation error of a rational
  // probe is still decaying at the finest step: neither verdict is earned.
  RationalMatrixFamily geom(1, 1,
                            {RationalEntry{{Complex(1, 0)}, {Complex(1, 0), Complex(-1, 0)}}});
  Tolerances strict = tol;
  strict.cr_tol = 1e-12;
  auto undecided = matrix_family_differentiability(
      [&](Complex z) { return geom.eval(z); }, Complex(0, 0), strict);
  CHECK(undecided.classification == Holomorphy::inconclusive);
  CHECK(undecided.residuals.front() > 5 * undecided.residuals.back());

  // The same probe at the default threshold is cleanly holomorphic.
  auto decided = matrix_family_differentiability([&](Complex z) { return geom.eval(z); },
                                                 Complex(0, 0), tol);
  CHECK(decided.classification == Holomorphy::holomorphic);
}

TEST_CASE("family evaluation is deterministic") {
  OperatorFamily line = line_family();
  const Complex z(0.37, -0.21);
  CHECK(operator_gap(line(z), line(z)) <= tol.gap_tol);
  OperatorFamily res = OperatorFamily::resolvent(diag2(1, 2), tol);
  CHECK(operator_gap(res(z), res(z)) <= tol.gap_tol);
  CHECK_THROWS_AS(operator_gap(line(z), res(z)), DimensionMismatch);
}

TEST_CASE("reflect") {
  Rng rng(derive_seed(4, "reflect"));
  Matrix m = random_matrix(rng, 2, 3);
  OperatorFamily constant = OperatorFamily::constant(GraphOperator::from_matrix(m));
  OperatorFamily reflected = reflect(constant, tol);
  CHECK(operator_norm(reflected(Complex(0.3, 0.7)).to_matrix() - m.adjoint()) < 1e-10);

  OperatorFamily line = line_family();
  OperatorFamily line_reflected = reflect(line, tol);
  for (Complex z : {Complex(0.2, 0.1), Complex(-0.4, 0.9)})
    CHECK(std::abs(line_reflected(z).to_matrix()(0, 0) - z) < 1e-12);

  OperatorFamily twice = reflect(reflect(constant, tol), tol);
  CHECK(operator_norm(twice(Complex(1, 1)).to_matrix() - m) < 1e-10);

  // Reflecting a partial-domain family surfaces the missing adjoint on
  // evaluation.
  Matrix w(2, 1), v(2, 1);
  w << Complex(1, 0), Complex(0, 0);
  v << Complex(1, 0), Complex(0, 0);
  OperatorFamily partial = OperatorFamily::constant(GraphOperator(2, 2, w, v));
  CHECK_THROWS_AS(reflect(partial, tol)(Complex(0, 0)), AdjointIsRelation);
}

TEST_CASE("schwarz reflection check") {
  CHECK(check_schwarz_reflection(line_family(), Complex(0, 1), tol).passed);
  PropertyReport conj = check_schwarz_reflection(conjugate_family(), Complex(0, 0), tol);
  CHECK(conj.passed);
  CHECK(conj.direct.classification == Holomorphy::not_holomorphic);
  CHECK(conj.mirrored.classification == Holomorphy::not_holomorphic);
  CHECK(check_schwarz_reflection(
            OperatorFamily::constant(GraphOperator::from_matrix(diag2(1, 2))), Complex(0.5, 0.5),
            tol)
            .passed);
}

TEST_CASE("product and sum families") {
  OperatorFamily line = line_family();
  OperatorFamily ident =
      OperatorFamily::constant(GraphOperator::from_matrix(Matrix::Identity(1, 1)));
  OperatorFamily zero = OperatorFamily::constant(GraphOperator::from_matrix(scalar(0)));

  OperatorFamily square = product_family(line, line, tol);
  for (Complex z : {Complex(0.5, 0), Complex(0.3, -0.4)})
    CHECK(std::abs(square(z).to_matrix()(0, 0) - z * z) < 1e-12);
  CHECK(operator_gap(product_family(ident, line, tol)(Complex(0.7, 0.1)),
                     line(Complex(0.7, 0.1))) < 1e-12);
  CHECK(operator_gap(sum_family(line, zero, tol)(Complex(0.7, 0.1)), line(Complex(0.7, 0.1))) <
        1e-12);
}

TEST_CASE("product theorem preconditions") {
  std::vector<Complex> samples{Complex(0.1, 0.2), Complex(-0.3, 0.1)};

  OperatorFamily invertible =
      OperatorFamily::constant(GraphOperator::from_matrix(diag2(2, 1)));
  Matrix w(2, 1), v(2, 1);
  w << Complex(1, 0), Complex(0, 0);
  v << Complex(1, 0), Complex(0, 0);
  OperatorFamily partial = OperatorFamily::constant(GraphOperator(2, 2, w, v));
  CHECK(check_product_theorem_preconditions(partial, invertible, samples,
                                            ProductCriterion::bounded_or_invertible_factor, tol)
            .all_hold);
  CHECK_FALSE(check_product_theorem_preconditions(
                  partial, partial, samples, ProductCriterion::densely_defined_product, tol)
                  .all_hold);

  PreconditionReport holo = check_product_theorem_preconditions(
      OperatorFamily::constant(GraphOperator::from_matrix(scalar(1))),
      OperatorFamily::constant(GraphOperator::from_matrix(scalar(4))), samples,
      ProductCriterion::common_squared_resolvent, tol, {Complex(1, 0)});
  CHECK(holo.all_hold);
  REQUIRE(holo.lambda.has_value());
  CHECK(std::abs(*holo.lambda * *holo.lambda - Complex(4, 0)) > 1e-8);

  // Dom A = span(e1) and Ran B = span(e1) leave e2 uncovered.
  Matrix rank1 = Matrix::Zero(2, 2);
  rank1(0, 0) = Complex(1, 0);
  PreconditionReport deficient = check_product_theorem_preconditions(
      partial, OperatorFamily::constant(GraphOperator::from_matrix(rank1)), samples,
      ProductCriterion::domain_range_cover, tol);
  CHECK_FALSE(deficient.all_hold);
  CHECK(deficient.samples.front().detail.find("witness") != std::string::npos);
  PreconditionReport covered = check_product_theorem_preconditions(
      invertible, OperatorFamily::constant(GraphOperator::from_matrix(rank1)), samples,
      ProductCriterion::domain_range_cover, tol);
  CHECK(covered.all_hold);
}

TEST_CASE("sum theorem") {
  std::vector<Complex> samples{Complex(0.2, 0.1)};
  OperatorFamily a =
      OperatorFamily::constant(GraphOperator::from_matrix(diag2(1, 3)));
  OperatorFamily b =
      OperatorFamily::constant(GraphOperator::from_matrix(diag2(2, -1)));
  CHECK(check_sum_theorem(a, b, samples, tol).all_hold);

  Matrix w1(2, 1), v1(2, 1), w2(2, 1), v2(2, 1);
  w1 << Complex(1, 0), Complex(0, 0);
  v1 << Complex(1, 0), Complex(0, 0);
  w2 << Complex(0, 0), Complex(1, 0);
  v2 << Complex(0, 0), Complex(1, 0);
  OperatorFamily t = OperatorFamily::constant(GraphOperator(2, 2, w1, v1));
  OperatorFamily s = OperatorFamily::constant(GraphOperator(2, 2, w2, v2));
  CHECK(check_sum_theorem(t, s, samples, tol).all_hold);
  CHECK(add(t(samples[0]), s(samples[0]), tol).graph_dim() == 0);
}

TEST_CASE("kernel family") {
  SubspaceFamily line = kernel_line();
  Matrix expected(2, 1);
  expected << Complex(-0.3, 0), Complex(1, 0);
  CHECK(gap(line(Complex(0.3, 0)), Subspace::from_spanning(expected)) < 1e-12);

  Matrix row(1, 2);
  row << Complex(1, 0), Complex(2, 0);
  SubspaceFamily frozen = kernel_family(
      OperatorFamily::constant(GraphOperator::from_matrix(row)), tol);
  CHECK(gap(frozen(Complex(0, 0)), frozen(Complex(1, 1))) < 1e-12);

  OperatorFamily conj_row(
      [](Complex z) {
        Matrix r(1, 2);
        r << Complex(1, 0), std::conj(z);
        return GraphOperator::from_matrix(r);
      },
      2, 1, "conjugate row");
  auto report =
      subspace_family_differentiability(kernel_family(conj_row, tol), Complex(0, 0), tol);
  CHECK(report.classification == Holomorphy::not_holomorphic);

  OperatorFamily never_surjective =
      OperatorFamily::constant(GraphOperator::from_matrix(Matrix::Zero(1, 2)));
  CHECK_THROWS_AS(kernel_family(never_surjective, tol)(Complex(0, 0)), NotSurjective);
}

TEST_CASE("resolvent family") {
  OperatorFamily res = OperatorFamily::resolvent(diag2(1, 2), tol);
  CHECK(operator_norm(res(Complex(0, 0)).to_matrix() - (-diag2(1, 0.5))) < 1e-12);
  CHECK_THROWS_AS(res(Complex(1, 0)), NotInjective);
  CHECK(relchar_differentiability(res, Complex(3, 0), tol).classification ==
        Holomorphy::holomorphic);
}

TEST_CASE("riesz distance") {
  CHECK(riesz_distance(diag2(1, 2), diag2(1, 2)) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(riesz_distance(scalar(0), scalar(1)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  const double n = 100.0;
  CHECK(riesz_distance(scalar(0), scalar(n)) ==
        doctest::Approx(n / std::sqrt(1 + n * n)).epsilon(1e-12));
}
