#include "gaplab/verify.hpp"

#include "gaplab/family_io.hpp"
#include "gaplab/holomorphy.hpp"
#include "gaplab/random_gen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gaplab {

namespace {

struct SuiteBuilder {
  SuiteResult suite;
  std::uint64_t seed;

  explicit SuiteBuilder(std::string name, std::uint64_t base_seed) : seed(base_seed) {
    suite.name = std::move(name);
  }

  void run(const std::string& name, const std::function<void(Rng&, PropertyResult&)>& body) {
    PropertyResult result;
    result.name = name;
    Rng rng(derive_seed(seed, suite.name + "/" + name));
    try {
      body(rng, result);
      result.passed = result.failures == 0;
    } catch (const std::exception& e) {
      result.passed = false;
      if (result.detail.empty()) result.detail = e.what();
    }
    suite.passed = suite.passed && result.passed;
    suite.properties.push_back(std::move(result));
  }
};

void note_failure(PropertyResult& result, const std::string& note) {
  ++result.failures;
  if (result.detail.empty()) result.detail = note;
}

Index random_index(Rng& rng, Index lo, Index hi) {
  std::uniform_int_distribution<Index> dist(lo, hi);
  return dist(rng);
}

double random_real(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

// ---------------------------------------------------------------------------
// grassmann

SuiteResult grassmann_suite(std::uint64_t seed) {
  SuiteBuilder builder("grassmann", seed);
  const Tolerances tol;

  builder.run("numeric kernel primitives hold", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 60; ++trial) {
      ++res.trials;
      const Index rows = random_index(rng, 1, 40);
      const Index cols = random_index(rng, 1, 40);
      Matrix m = random_matrix(rng, rows, cols);
      SvdResult dec = svd(m);
      Matrix rebuilt = dec.u * dec.singular_values.asDiagonal() * dec.v.adjoint();
      if (operator_norm(m - rebuilt) > 1e-11 * dec.singular_values(0))
        note_failure(res, "svd reconstruction error too large");
      Matrix other = random_matrix(rng, cols, random_index(rng, 1, 10));
      if (operator_norm(m * other) >
          operator_norm(m) * operator_norm(other) * (1.0 + 1e-12))
        note_failure(res, "operator norm is not submultiplicative");
      Matrix q = orthonormal_columns(m, tol);
      if (q.cols() > 0 &&
          operator_norm(Matrix(q.adjoint() * q) - Matrix::Identity(q.cols(), q.cols())) > 1e-12)
        note_failure(res, "orthonormal basis lost orthonormality");
      if (operator_norm(m - q * (q.adjoint() * m)) >
          tol.rank_tol * operator_norm(m) * 10.0)
        note_failure(res, "orthonormal basis does not span its input");
    }
  });

  builder.run("gap equals projector distance", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 200; ++trial) {
      ++res.trials;
      const Index n = random_index(rng, 1, 40);
      Subspace x = random_subspace(rng, n, random_index(rng, 0, n));
      Subspace y = random_subspace(rng, n, random_index(rng, 0, n));
      const double mismatch = std::abs(gap(x, y) - projector_distance(x, y));
      if (mismatch > 1e-9) {
        std::ostringstream os;
        os << "gap vs projector distance differ by " << mismatch << " at n=" << n;
        note_failure(res, os.str());
      }
    }
  });

  builder.run("oblique projections split the identity", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index n = random_index(rng, 2, 12);
      const Index k = random_index(rng, 1, n - 1);
      auto [x, y] = random_complementary_pair(rng, n, k);
      Matrix sum = oblique_projection(x, y, tol) + oblique_projection(y, x, tol);
      if (operator_norm(sum - Matrix::Identity(n, n)) > 1e-9)
        note_failure(res, "P_{X,Y} + P_{Y,X} differs from the identity");
    }
  });

  builder.run("oblique projection matches columnwise decomposition",
              [&](Rng& rng, PropertyResult& res) {
                for (int trial = 0; trial < 200; ++trial) {
                  ++res.trials;
                  const Index n = random_index(rng, 2, 10);
                  const Index k = random_index(rng, 1, n - 1);
                  auto [x, y] = random_complementary_pair(rng, n, k);
                  Matrix p = oblique_projection(x, y, tol);
                  // Independent route: solve v = x + y columnwise.
                  Matrix stacked(n, n);
                  stacked.leftCols(k) = x.basis();
                  stacked.rightCols(n - k) = y.basis();
                  Matrix coeffs = solve_invertible(stacked, Matrix(Matrix::Identity(n, n)), tol);
                  Matrix oracle = x.basis() * coeffs.topRows(k);
                  if ((p - oracle).cwiseAbs().maxCoeff() > 1e-9)
                    note_failure(res, "formula and decomposition oracle disagree");
                }
              });

  builder.run("complementarity needs matching dimensions", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index n = random_index(rng, 2, 10);
      const Index kx = random_index(rng, 0, n);
      Index ky = random_index(rng, 0, n);
      if (kx + ky == n) ky = (ky + 1 <= n) ? ky + 1 : ky - 1;
      Subspace x = random_subspace(rng, n, kx);
      Subspace y = random_subspace(rng, n, ky);
      if (is_complementary(x, y, tol))
        note_failure(res, "pair with mismatched dimensions reported complementary");
    }
  });

  builder.run("delta vanishes exactly on contained subspaces", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index n = random_index(rng, 2, 12);
      const Index m = random_index(rng, 1, n - 1);
      Subspace y = random_subspace(rng, n, m);
      const Index j = random_index(rng, 0, m);
      Subspace x = Subspace::from_spanning(y.basis() * random_matrix(rng, m, j), tol);
      if (delta(x, y) > tol.gap_tol) note_failure(res, "contained subspace has positive delta");
      // Adding a direction orthogonal to Y must push delta up.
      Subspace y_perp = orthocomplement(y);
      Subspace widened = sum_subspace(x, Subspace::from_spanning(y_perp.basis().col(0)), tol);
      if (delta(widened, y) < tol.gap_tol)
        note_failure(res, "subspace leaving Y still has vanishing delta");
    }
  });

  builder.run("projector distance dominates the pair gaps", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 500; ++trial) {
      ++res.trials;
      const Index n = random_index(rng, 2, 12);
      const Index k = random_index(rng, 1, n - 1);
      auto [x, y] = random_complementary_pair(rng, n, k);
      auto [xp, yp] = random_complementary_pair(rng, n, random_index(rng, 1, n - 1));
      BoundReport report = check_projector_gap_bound(x, y, xp, yp, tol);
      if (!report.bound_holds) {
        std::ostringstream os;
        os << "lower bound failed: " << report.lhs << " > " << report.rhs;
        note_failure(res, os.str());
      }
    }
  });

  builder.run("oblique perturbation bound", [&](Rng& rng, PropertyResult& res) {
    int accepted = 0;
    while (accepted < 500) {
      const Index n = random_index(rng, 2, 12);
      const Index k = random_index(rng, 1, n - 1);
      auto [x, y] = random_complementary_pair(rng, n, k, 4.0);
      const double eps = random_real(rng, 0.0, 0.04);
      Subspace xp = perturb_subspace(rng, x, eps);
      // Half the draws exercise the fixed-complement corollary.
      Subspace yp = (accepted % 2 == 0) ? perturb_subspace(rng, y, eps) : y;
      BoundReport report = check_perturbation_bound(x, y, xp, yp, tol);
      if (!report.hypotheses_hold) {
        ++res.reported;
        continue;
      }
      ++accepted;
      ++res.trials;
      if (!report.bound_holds) {
        std::ostringstream os;
        os << "perturbation bound failed: " << report.lhs << " > " << report.rhs;
        note_failure(res, os.str());
      }
    }
    std::ostringstream os;
    os << res.reported << " hypothesis-violating draws reported";
    if (res.detail.empty()) res.detail = os.str();
  });

  builder.run("range delta bound", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 200; ++trial) {
      ++res.trials;
      const Index n = random_index(rng, 2, 10);
      const Index k = random_index(rng, 1, n);
      Matrix t = random_matrix(rng, n, k);
      if (rank_of(t, tol) != k) {
        --trial;
        --res.trials;
        continue;
      }
      Matrix s = t + random_matrix(rng, n, k, random_real(rng, 0.0, 0.5));
      BoundReport report = check_range_delta_bound(t, s, tol);
      if (!report.bound_holds) note_failure(res, "range delta exceeded its bound");
    }
  });

  builder.run("invertible maps preserve complementarity", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index n = random_index(rng, 2, 10);
      const Index k = random_index(rng, 1, n - 1);
      auto [x, y] = random_complementary_pair(rng, n, k);
      Matrix t = random_well_conditioned(rng, n);
      if (!is_complementary(map_subspace(t, x, tol), map_subspace(t, y, tol), tol))
        note_failure(res, "image pair lost complementarity");
    }
  });

  return builder.suite;
}

// ---------------------------------------------------------------------------
// graphop

SuiteResult graphop_suite(std::uint64_t seed) {
  SuiteBuilder builder("graphop", seed);
  const Tolerances tol;

  builder.run("graph subspace round-trip", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index n1 = random_index(rng, 1, 8);
      const Index n2 = random_index(rng, 1, 8);
      const Index k = random_index(rng, 0, n1);
      GraphOperator t = random_partial_operator(rng, n1, n2, k, tol);
      GraphOperator back = GraphOperator::from_graph_subspace(t.graph(), n1, n2, tol);
      if (operator_gap(t, back) > 1e-10) note_failure(res, "round-trip changed the operator");
    }
  });

  builder.run("inverse is an involution and flips the graph", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index n1 = random_index(rng, 1, 6);
      const Index n2 = random_index(rng, 1, 6);
      const Index k = random_index(rng, 0, std::min(n1, n2));
      GraphOperator t = random_partial_operator(rng, n1, n2, k, tol);
      if (t.kernel(tol).dim() > 0) {
        --trial;
        --res.trials;
        continue;
      }
      GraphOperator inv = inverse(t, tol);
      if (operator_gap(inverse(inv, tol), t) > 1e-10)
        note_failure(res, "double inverse changed the operator");
      Matrix flipped(n2 + n1, k);
      flipped.topRows(n2) = t.graph().basis().bottomRows(n2);
      flipped.bottomRows(n1) = t.graph().basis().topRows(n1);
      if (gap(inv.graph(), Subspace::from_orthonormal(flipped)) > 1e-12)
        note_failure(res, "inverse graph is not the flipped graph");
    }
  });

  builder.run("adjoint matches the conjugate transpose", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index n1 = random_index(rng, 1, 7);
      const Index n2 = random_index(rng, 1, 7);
      Matrix m = random_matrix(rng, n2, n1);
      GraphOperator t = GraphOperator::from_matrix(m, tol);
      GraphOperator t_adj = adjoint(t, tol);
      if (operator_norm(t_adj.to_matrix(tol) - m.adjoint()) > 1e-10)
        note_failure(res, "adjoint differs from conjugate transpose");
      if (operator_norm(adjoint(t_adj, tol).to_matrix(tol) - m) > 1e-10)
        note_failure(res, "adjoint is not an involution");
    }
  });

  builder.run("composition is associative at tolerance", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index d0 = random_index(rng, 1, 5);
      const Index d1 = random_index(rng, 1, 5);
      const Index d2 = random_index(rng, 1, 5);
      const Index d3 = random_index(rng, 1, 5);
      GraphOperator c = GraphOperator::from_matrix(random_matrix(rng, d1, d0), tol);
      GraphOperator b = GraphOperator::from_matrix(random_matrix(rng, d2, d1), tol);
      GraphOperator a = GraphOperator::from_matrix(random_matrix(rng, d3, d2), tol);
      GraphOperator left = compose(a, compose(b, c, tol), tol);
      GraphOperator right = compose(compose(a, b, tol), c, tol);
      if (operator_gap(left, right) > 1e-8) note_failure(res, "associativity gap too large");
    }
  });

  builder.run("reduced minimum modulus inverts the inverse norm",
              [&](Rng& rng, PropertyResult& res) {
                for (int trial = 0; trial < 100; ++trial) {
                  ++res.trials;
                  const Index n1 = random_index(rng, 1, 6);
                  const Index n2 = random_index(rng, 1, 6);
                  const Index k = random_index(rng, 1, std::min(n1, n2));
                  GraphOperator t = random_partial_operator(rng, n1, n2, k, tol);
                  if (t.kernel(tol).dim() > 0) {
                    --trial;
                    --res.trials;
                    continue;
                  }
                  const double gamma = reduced_min_modulus(t, tol);
                  GraphOperator inv = inverse(t, tol);
                  Matrix q = inv.domain(tol).basis();
                  Matrix action = inv.resolution_v() * (pseudoinverse(inv.resolution_w(), tol) * q);
                  const double inv_norm = operator_norm(action);
                  if (std::abs(gamma - 1.0 / inv_norm) > 1e-9)
                    note_failure(res, "modulus and inverse norm are not reciprocal");
                }
              });

  builder.run("relative characteristic matrix is the oblique graph projection",
              [&](Rng& rng, PropertyResult& res) {
                for (int trial = 0; trial < 100; ++trial) {
                  ++res.trials;
                  const Index n1 = random_index(rng, 1, 6);
                  const Index n2 = random_index(rng, 1, 6);
                  Matrix t_mat = random_matrix(rng, n2, n1);
                  Matrix s_mat = random_matrix(rng, n2, n1);
                  Matrix core = Matrix::Identity(n1, n1) + s_mat.adjoint() * t_mat;
                  if (rank_of(core, tol) < n1 ||
                      operator_norm(core) * operator_norm(pseudoinverse(core, tol)) > 1e3) {
                    --trial;
                    --res.trials;
                    continue;
                  }
                  GraphOperator t = GraphOperator::from_matrix(t_mat, tol);
                  GraphOperator s = GraphOperator::from_matrix(s_mat, tol);
                  Matrix m = relative_characteristic_matrix(t, s, tol);
                  if (operator_norm(m * m - m) > 1e-9) note_failure(res, "not idempotent");
                  if (gap(Subspace::from_spanning(m, tol), t.graph()) > 1e-8)
                    note_failure(res, "range is not Gr(T)");
                  Matrix ker_dirs = orthocomplement(s.graph()).basis();
                  if (operator_norm(m * ker_dirs) > 1e-8)
                    note_failure(res, "does not annihilate Gr(S)^perp");
                  Matrix blocks = relative_characteristic_blocks(t_mat, s_mat, tol);
                  if (operator_norm(m - blocks) > 1e-9)
                    note_failure(res, "block assembly disagrees with the projection formula");
                }
              });

  builder.run("bounded shifts act as shears on graphs", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index n1 = random_index(rng, 1, 6);
      const Index n2 = random_index(rng, 1, 6);
      const Index k = random_index(rng, 0, n1);
      GraphOperator t = random_partial_operator(rng, n1, n2, k, tol);
      Matrix s = random_matrix(rng, n2, n1);
      GraphOperator shifted = add(t, GraphOperator::from_matrix(s, tol), tol);
      Matrix shear = Matrix::Identity(n1 + n2, n1 + n2);
      shear.bottomLeftCorner(n2, n1) = s;
      Subspace mapped = map_subspace(shear, t.graph(), tol);
      if (gap(shifted.graph(), mapped) > 1e-9)
        note_failure(res, "shift does not act as the shear on the graph");
    }
  });

  builder.run("characteristic matrix block route agrees", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index n1 = random_index(rng, 1, 20);
      const Index n2 = random_index(rng, 1, 20);
      Matrix m = random_matrix(rng, n2, n1);
      GraphOperator t = GraphOperator::from_matrix(m, tol);
      Matrix via_graph = characteristic_matrix(t);
      Matrix via_blocks = characteristic_matrix_blocks(m);
      if (operator_norm(via_graph - via_blocks) > 1e-9)
        note_failure(res, "graph projector and block route disagree");
      if (operator_norm(relative_characteristic_matrix(t, t, tol) - via_graph) > 1e-10)
        note_failure(res, "M_{T,T} differs from M_T");
    }
  });

  builder.run("block operator splits the squared spectrum", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index n1 = random_index(rng, 1, 8);
      const Index n2 = random_index(rng, 1, 8);
      Matrix a = random_matrix(rng, n1, n2);
      Matrix b = random_matrix(rng, n2, n1);
      BoundReport report = check_spectrum_split(a, b, tol);
      if (!report.bound_holds) {
        std::ostringstream os;
        os << "spectra mismatch " << report.lhs << " > " << report.rhs;
        note_failure(res, os.str());
      }
    }
  });

  builder.run("closed range duality", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index n1 = random_index(rng, 1, 8);
      const Index n2 = random_index(rng, 1, 8);
      // Mix full-rank and deficient-rank draws.
      Matrix m = random_matrix(rng, n2, n1);
      if (trial % 3 == 0 && std::min(n1, n2) > 1) {
        m.col(0) = m.col(std::min<Index>(1, n1 - 1));
      }
      BoundReport report = check_closed_range_duality(GraphOperator::from_matrix(m, tol), tol);
      if (!report.bound_holds) note_failure(res, report.detail);
    }
  });

  builder.run("left invertible perturbation bound", [&](Rng& rng, PropertyResult& res) {
    for (int trial = 0; trial < 100; ++trial) {
      ++res.trials;
      const Index n = random_index(rng, 1, 8);
      const Index k = random_index(rng, 1, n);
      Matrix t_mat = random_matrix(rng, n, k);
      GraphOperator t = GraphOperator::from_matrix(t_mat, tol);
      const double gamma = reduced_min_modulus(t, tol);
      if (gamma < 1e-3) {
        --trial;
        --res.trials;
        continue;
      }
      Matrix s = random_matrix(rng, n, k);
      s *= random_real(rng, 0.0, 0.9) * gamma / std::max(operator_norm(s), 1e-300);
      BoundReport report = check_left_invertible_perturbation(t, s, tol);
      if (!report.bound_holds) note_failure(res, "modulus moved more than the perturbation");
    }
  });

  return builder.suite;
}

// ---------------------------------------------------------------------------
// holomorphy

OperatorFamily scalar_conjugate_family(const Tolerances& tol) {
  return OperatorFamily(
      [tol](Complex z) {
        Matrix m(1, 1);
        m(0, 0) = std::conj(z);
        return GraphOperator::from_matrix(m, tol);
      },
      1, 1, "conjugate");
}

OperatorFamily scalar_identity_line(const Tolerances& tol) {
  RationalMatrixFamily r(1, 1, {RationalEntry{{Complex(0, 0), Complex(1, 0)}, {Complex(1, 0)}}});
  return OperatorFamily::from_rational(r, tol);
}

SubspaceFamily kernel_line_family(const Tolerances& tol) {
  RationalMatrixFamily row(
      1, 2,
      {RationalEntry{{Complex(1, 0)}, {Complex(1, 0)}},
       RationalEntry{{Complex(0, 0), Complex(1, 0)}, {Complex(1, 0)}}});
  return kernel_family(OperatorFamily::from_rational(row, tol), tol);
}

SuiteResult holomorphy_suite(std::uint64_t seed) {
  SuiteBuilder builder("holomorphy", seed);
  const Tolerances tol;

  builder.run("classification is stable across step subsets", [&](Rng& rng, PropertyResult& res) {
    Tolerances coarse = tol;
    coarse.fd_steps = {1e-3, 1e-4};
    Tolerances fine = tol;
    fine.fd_steps = {1e-4, 1e-5};
    auto stable_operator = [&](const OperatorFamily& f, Complex z0) {
      ++res.trials;
      if (relchar_differentiability(f, z0, coarse).classification !=
          relchar_differentiability(f, z0, fine).classification)
        note_failure(res, "operator family classification flipped between step subsets");
    };
    for (int i = 0; i < 5; ++i) {
      const Complex z0 = random_in_disc(rng, 0.8);
      stable_operator(scalar_identity_line(tol), z0);
      stable_operator(scalar_conjugate_family(tol), z0);
    }
    Matrix diag12 = Matrix::Zero(2, 2);
    diag12(0, 0) = Complex(1, 0);
    diag12(1, 1) = Complex(2, 0);
    stable_operator(OperatorFamily::resolvent(diag12, tol), Complex(4.0, 0.5));
    SubspaceFamily line = kernel_line_family(tol);
    ++res.trials;
    if (subspace_family_differentiability(line, Complex(0, 0), coarse).classification !=
        subspace_family_differentiability(line, Complex(0, 0), fine).classification)
      note_failure(res, "subspace family classification flipped between step subsets");
  });

  builder.run("schwarz reflection on rational families", [&](Rng& rng, PropertyResult& res) {
    int accepted = 0;
    while (accepted < 50) {
      const Index n1 = random_index(rng, 1, 6);
      const Index n2 = random_index(rng, 1, 6);
      RationalMatrixFamily r = random_rational_family(rng, n2, n1, 3);
      OperatorFamily family = OperatorFamily::from_rational(r, tol);
      const Complex z0 = random_in_disc(rng, 0.9);
      PropertyReport report;
      try {
        report = check_schwarz_reflection(family, z0, tol);
      } catch (const Error&) {
        ++res.reported;  // degenerate draw (pole or transversality loss)
        continue;
      }
      ++accepted;
      ++res.trials;
      if (!report.passed) note_failure(res, report.detail);
    }
  });

  builder.run("resolution and relative-characteristic probes agree",
              [&](Rng& rng, PropertyResult& res) {
                for (int trial = 0; trial < 25; ++trial) {
                  ++res.trials;
                  const Index n1 = random_index(rng, 2, 5);
                  const Index n2 = random_index(rng, 1, 5);
                  const Index k = random_index(rng, 1, n1);
                  Matrix w0 = orthonormal_columns(random_matrix(rng, n1, k));
                  Matrix w1 = random_matrix(rng, n1, k, 0.2);
                  Matrix v0 = random_matrix(rng, n2, k);
                  Matrix v1 = random_matrix(rng, n2, k);
                  RationalMatrixFamily wfam = RationalMatrixFamily::pencil(w0, w1);
                  RationalMatrixFamily vfam = RationalMatrixFamily::pencil(v0, v1);
                  OperatorFamily family = OperatorFamily::from_resolution(wfam, vfam, tol);
                  const Complex z0 = random_in_disc(rng, 0.5);
                  auto via_resolution = resolution_differentiability(
                      [&](Complex z) { return wfam.eval(z); },
                      [&](Complex z) { return vfam.eval(z); }, z0, tol, &family);
                  auto via_relchar = relchar_differentiability(family, z0, tol);
                  if (via_resolution.classification != via_relchar.classification)
                    note_failure(res, "probes disagree on a rational resolution family");
                }
              });

  builder.run("rational families are determined by finitely many samples",
              [&](Rng& rng, PropertyResult& res) {
                for (int trial = 0; trial < 20; ++trial) {
                  ++res.trials;
                  const Index n = random_index(rng, 1, 4);
                  const int degree = 3;
                  RationalMatrixFamily f = random_polynomial_family(rng, n, n, degree);
                  // Interpolation points on the unit circle; 2*degree+1 suffice.
                  const int points = 2 * degree + 1;
                  std::vector<Complex> zs;
                  for (int p = 0; p < points; ++p) {
                    const double angle = 2.0 * M_PI * p / points + random_real(rng, 0.0, 0.1);
                    zs.emplace_back(std::cos(angle), std::sin(angle));
                  }
                  // Rebuild each entry by solving the Vandermonde system.
                  Matrix vand(points, degree + 1);
                  for (int p = 0; p < points; ++p) {
                    Complex power(1.0, 0.0);
                    for (int d = 0; d <= degree; ++d) {
                      vand(p, d) = power;
                      power *= zs[static_cast<std::size_t>(p)];
                    }
                  }
                  std::vector<RationalEntry> rebuilt(static_cast<std::size_t>(n * n));
                  Matrix samples(points, n * n);
                  for (int p = 0; p < points; ++p) {
                    Matrix value = f.eval(zs[static_cast<std::size_t>(p)]);
                    for (Index e = 0; e < n * n; ++e) samples(p, e) = value(e / n, e % n);
                  }
                  Matrix coeffs = pseudoinverse(vand, tol) * samples;
                  for (Index e = 0; e < n * n; ++e) {
                    RationalEntry entry;
                    entry.num.clear();
                    for (int d = 0; d <= degree; ++d) entry.num.push_back(coeffs(d, e));
                    rebuilt[static_cast<std::size_t>(e)] = std::move(entry);
                  }
                  RationalMatrixFamily g(n, n, std::move(rebuilt));
                  double worst = 0.0;
                  for (int grid = 0; grid < 100; ++grid) {
                    const Complex z = random_in_disc(rng, 1.0);
                    worst = std::max(worst,
                                     operator_gap(GraphOperator::from_matrix(f.eval(z), tol),
                                                  GraphOperator::from_matrix(g.eval(z), tol)));
                  }
                  if (worst > 1e-8) {
                    std::ostringstream os;
                    os << "families agreeing at " << points << " points differ by " << worst;
                    note_failure(res, os.str());
                  }
                }
              });

  builder.run("constant-domain rational families are holomorphic off poles",
              [&](Rng& rng, PropertyResult& res) {
                int accepted = 0;
                while (accepted < 25) {
                  const Index n1 = random_index(rng, 1, 5);
                  const Index n2 = random_index(rng, 1, 5);
                  RationalMatrixFamily r = random_rational_family(rng, n2, n1, 3);
                  OperatorFamily family = OperatorFamily::from_rational(r, tol);
                  const Complex z0 = random_in_disc(rng, 0.9);
                  DifferentiabilityReport report;
                  try {
                    report = relchar_differentiability(family, z0, tol);
                  } catch (const Error&) {
                    ++res.reported;
                    continue;
                  }
                  ++accepted;
                  ++res.trials;
                  if (report.classification != Holomorphy::holomorphic)
                    note_failure(res, "rational family not classified holomorphic");
                }
              });

  builder.run("invertible images of holomorphic subspace families stay holomorphic",
              [&](Rng& rng, PropertyResult& res) {
                for (int trial = 0; trial < 25; ++trial) {
                  ++res.trials;
                  const Index n = random_index(rng, 2, 5);
                  const Index k = random_index(rng, 1, n - 1);
                  Matrix m0 = random_well_conditioned(rng, n);
                  Matrix m1 = random_matrix(rng, n, n, 0.2 / operator_norm(m0));
                  Matrix b0 = orthonormal_columns(random_matrix(rng, n, k));
                  Matrix b1 = random_matrix(rng, n, k, 0.2);
                  SubspaceFamily image(
                      [=, &tol](Complex z) {
                        Matrix map = m0 * (Matrix::Identity(n, n) + z * m1);
                        return Subspace::from_spanning(map * (b0 + z * b1), tol);
                      },
                      n, "image family");
                  auto report = subspace_family_differentiability(image, random_in_disc(rng, 0.5),
                                                                  tol);
                  if (report.classification != Holomorphy::holomorphic)
                    note_failure(res, "image family not classified holomorphic");
                }
              });

  builder.run("kernel line is holomorphic obliquely, not orthogonally",
              [&](Rng&, PropertyResult& res) {
                ++res.trials;
                SubspaceFamily line = kernel_line_family(tol);
                auto oblique = subspace_family_differentiability(line, Complex(0, 0), tol);
                if (oblique.classification != Holomorphy::holomorphic ||
                    oblique.cr_residual >= 1e-8)
                  note_failure(res, "oblique probe did not certify the kernel line");
                auto ortho_probe = [&](Complex z) { return projector(line(z)); };
                auto ortho = matrix_family_differentiability(ortho_probe, Complex(0, 0), tol);
                if (ortho.classification != Holomorphy::not_holomorphic)
                  note_failure(res, "orthogonal projector probe missed the conjugate dependence");
                // d/d(conj z) of the projector at 0 has norm 1.
                if (std::abs(ortho.cr_residual - 1.0) > 0.2)
                  note_failure(res, "orthogonal probe residual far from the closed form");
              });

  builder.run("continuity modulus degrades with the family norm",
              [&](Rng&, PropertyResult& res) {
                double previous = -1.0;
                for (double n : {1.0, 10.0, 100.0}) {
                  ++res.trials;
                  RationalMatrixFamily r(
                      1, 1, {RationalEntry{{Complex(0, 0), Complex(n, 0)}, {Complex(1, 0)}}});
                  OperatorFamily family = OperatorFamily::from_rational(r, tol);
                  ContinuityReport report =
                      gap_continuity_modulus(family, Complex(0, 0), {1e-1, 1e-2, 1e-3}, 8, tol);
                  if (!report.continuous) note_failure(res, "scaled line flagged discontinuous");
                  const double expected = 0.1 * n / std::sqrt(1.0 + 0.01 * n * n);
                  if (std::abs(report.moduli.front() - expected) > 1e-9)
                    note_failure(res, "modulus does not match the closed form");
                  if (report.moduli.front() <= previous)
                    note_failure(res, "modulus is not increasing with the scale");
                  previous = report.moduli.front();
                }
              });

  builder.run("product and sum hypotheses verify on designed families",
              [&](Rng& rng, PropertyResult& res) {
                std::vector<Complex> samples;
                for (int i = 0; i < 4; ++i) samples.push_back(random_in_disc(rng, 0.5));

                // Invertible second factor.
                ++res.trials;
                Matrix k2 = random_matrix(rng, 2, 2);
                k2 *= 0.2 / operator_norm(k2);
                OperatorFamily b_inv = OperatorFamily::from_rational(
                    RationalMatrixFamily::pencil(Matrix::Identity(2, 2), k2), tol);
                OperatorFamily a_partial =
                    OperatorFamily::constant(random_partial_operator(rng, 2, 2, 1, tol));
                if (!check_product_theorem_preconditions(
                         a_partial, b_inv, samples,
                         ProductCriterion::bounded_or_invertible_factor, tol)
                         .all_hold)
                  note_failure(res, "invertible factor criterion failed");

                // Everywhere-defined product.
                ++res.trials;
                OperatorFamily a_rat = OperatorFamily::from_rational(
                    random_polynomial_family(rng, 2, 2, 2), tol);
                OperatorFamily b_rat = OperatorFamily::from_rational(
                    random_polynomial_family(rng, 2, 2, 2), tol);
                if (!check_product_theorem_preconditions(
                         a_rat, b_rat, samples, ProductCriterion::densely_defined_product, tol)
                         .all_hold)
                  note_failure(res, "densely defined product criterion failed");

                // Common squared resolvent point for constant scalars.
                ++res.trials;
                Matrix one(1, 1), four(1, 1);
                one(0, 0) = Complex(1, 0);
                four(0, 0) = Complex(4, 0);
                auto holo = check_product_theorem_preconditions(
                    OperatorFamily::constant(GraphOperator::from_matrix(one, tol)),
                    OperatorFamily::constant(GraphOperator::from_matrix(four, tol)), samples,
                    ProductCriterion::common_squared_resolvent, tol, {Complex(1, 0)});
                if (!holo.all_hold || !holo.lambda)
                  note_failure(res, "no common resolvent point found for scalars");

                // Domain/range cover: positive and negative instance.
                ++res.trials;
                if (!check_product_theorem_preconditions(
                         a_rat, b_rat, samples, ProductCriterion::domain_range_cover, tol)
                         .all_hold)
                  note_failure(res, "full-domain cover criterion failed");
                Matrix w_e1(2, 1), v_e1(2, 1);
                w_e1 << Complex(1, 0), Complex(0, 0);
                v_e1 << Complex(1, 0), Complex(0, 0);
                OperatorFamily a_line =
                    OperatorFamily::constant(GraphOperator(2, 2, w_e1, v_e1, tol));
                Matrix b_low = Matrix::Zero(2, 2);
                b_low(0, 0) = Complex(1, 0);
                OperatorFamily b_rank1 =
                    OperatorFamily::constant(GraphOperator::from_matrix(b_low, tol));
                if (check_product_theorem_preconditions(a_line, b_rank1, samples,
                                                        ProductCriterion::domain_range_cover, tol)
                        .all_hold)
                  note_failure(res, "deficient cover was not detected");

                // Sum theorem: everywhere-defined and split-domain instances.
                ++res.trials;
                if (!check_sum_theorem(a_rat, b_rat, samples, tol).all_hold)
                  note_failure(res, "sum hypotheses failed on bounded families");
                Matrix w_e2(2, 1), v_e2(2, 1);
                w_e2 << Complex(0, 0), Complex(1, 0);
                v_e2 << Complex(0, 0), Complex(1, 0);
                OperatorFamily t_line =
                    OperatorFamily::constant(GraphOperator(2, 2, w_e1, v_e1, tol));
                OperatorFamily s_line =
                    OperatorFamily::constant(GraphOperator(2, 2, w_e2, v_e2, tol));
                if (!check_sum_theorem(t_line, s_line, samples, tol).all_hold)
                  note_failure(res, "split domains should still cover the space");
                GraphOperator zero_dom = add(t_line(samples[0]), s_line(samples[0]), tol);
                if (zero_dom.graph_dim() != 0)
                  note_failure(res, "sum of split-domain lines should have zero domain");
              });

  builder.run("gap and riesz topologies on hermitian sequences",
              [&](Rng& rng, PropertyResult& res) {
                ++res.trials;
                auto f_equal = [](double t) { return Complex(1.0 / (1.0 + t * t), 0.0); };
                auto f_split = [](double t) { return Complex(std::tanh(t), 0.0); };
                Matrix a = random_matrix(rng, 4, 4);
                a = ((a + a.adjoint()) / 2.0).eval();
                Matrix b = random_matrix(rng, 4, 4);
                b = ((b + b.adjoint()) / 2.0).eval();
                // Norm-convergent sequence: every notion of convergence agrees.
                double first_riesz = -1.0;
                for (int k : {1, 8}) {
                  Matrix ak = a + b / std::pow(2.0, k);
                  const double riesz = riesz_distance(ak, a);
                  const double graph_gap = operator_gap(GraphOperator::from_matrix(ak),
                                                        GraphOperator::from_matrix(a));
                  const double calc_equal =
                      operator_norm(hermitian_calculus(ak, f_equal) - hermitian_calculus(a, f_equal));
                  const double calc_split =
                      operator_norm(hermitian_calculus(ak, f_split) - hermitian_calculus(a, f_split));
                  if (k == 1) first_riesz = riesz;
                  if (k == 8 && (riesz > first_riesz / 10.0 + 1e-12 || graph_gap > 0.05 ||
                                 calc_equal > 0.05 || calc_split > 0.05))
                    note_failure(res, "norm-convergent hermitian sequence did not converge");
                }
                // Escaping sequence: graphs converge to a vertical subspace,
                // equal-limit calculus converges, split-limit calculus does not.
                ++res.trials;
                Matrix vertical = Matrix::Zero(4, 2);
                vertical(2, 0) = Complex(1, 0);
                vertical(3, 1) = Complex(1, 0);
                Subspace vertical_space = Subspace::from_orthonormal(vertical);
                double prev_gap = 2.0;
                for (double k : {4.0, 16.0, 64.0}) {
                  Matrix tk = Matrix::Zero(2, 2);
                  tk(0, 0) = Complex(k, 0);
                  tk(1, 1) = Complex(-k, 0);
                  const double to_vertical =
                      gap(GraphOperator::from_matrix(tk).graph(), vertical_space);
                  if (to_vertical >= prev_gap)
                    note_failure(res, "escaping graphs stopped approaching the vertical space");
                  prev_gap = to_vertical;
                  if (operator_norm(hermitian_calculus(tk, f_equal)) > 1.0 / (1.0 + k * k) + 1e-9)
                    note_failure(res, "equal-limit calculus failed to flatten");
                  if (operator_norm(hermitian_calculus(tk, f_split)) < 0.9)
                    note_failure(res, "split-limit calculus lost its separation");
                }
              });

  builder.run("resolvent families are holomorphic exactly off the point spectrum",
              [&](Rng& rng, PropertyResult& res) {
                for (int trial = 0; trial < 10; ++trial) {
                  ++res.trials;
                  const Index n = random_index(rng, 2, 5);
                  Matrix u = random_unitary(rng, n);
                  Vector diag(n);
                  for (Index i = 0; i < n; ++i) diag(i) = random_complex(rng, 2.0);
                  Matrix t = u * diag.asDiagonal() * u.adjoint();
                  OperatorFamily family = OperatorFamily::resolvent(t, tol);
                  std::vector<Complex> eigs =
                      spectrum(GraphOperator::from_matrix(t, tol), tol);
                  double radius = 1.0;
                  for (Complex e : eigs) radius = std::max(radius, std::abs(e));
                  Complex z0;
                  for (;;) {
                    z0 = random_in_disc(rng, 2.0 * radius);
                    double dist = 1e300;
                    for (Complex e : eigs) dist = std::min(dist, std::abs(z0 - e));
                    if (dist > 0.5) break;
                  }
                  auto report = relchar_differentiability(family, z0, tol);
                  if (report.classification != Holomorphy::holomorphic)
                    note_failure(res, "resolvent family not holomorphic off the spectrum");
                  bool failed = false;
                  try {
                    family(eigs.front());
                  } catch (const NotInjective&) {
                    failed = true;
                  }
                  if (!failed)
                    note_failure(res, "evaluation at an eigenvalue did not fail");
                }
              });

  return builder.suite;
}

}  // namespace

std::vector<SuiteResult> run_verify_suites(const std::string& which, std::uint64_t seed) {
  std::vector<SuiteResult> results;
  if (which == "all" || which == "grassmann") results.push_back(grassmann_suite(seed));
  if (which == "all" || which == "graphop") results.push_back(graphop_suite(seed));
  if (which == "all" || which == "holomorphy") results.push_back(holomorphy_suite(seed));
  if (results.empty())
    throw std::invalid_argument("unknown suite \"" + which +
                                "\" (expected all, grassmann, graphop, or holomorphy)");
  return results;
}

}  // namespace gaplab
