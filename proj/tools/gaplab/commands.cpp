#include "commands.hpp"

#include "gaplab/verify.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

namespace gaplab::cli {

namespace {

std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_complex(Complex c) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", c.real(), c.imag());
  return buf;
}

void print_matrix(const Matrix& m, std::ostream& out) {
  out << "rows " << m.rows() << " cols " << m.cols() << "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << " ";
      out << fmt_complex(m(i, j));
    }
    out << "\n";
  }
}

void print_report(const DifferentiabilityReport& report, std::ostream& out) {
  out << "mode: " << report.mode << "\n";
  out << "classification: " << to_string(report.classification);
  if (report.classification == Holomorphy::not_holomorphic &&
      report.mode == "relative characteristic matrix")
    out << " (criterion failed: residual plateau in the relative characteristic probe)";
  out << "\n";
  out << "cr_residual: " << fmt17(report.cr_residual) << "\n";
  out << "residuals per step:";
  for (double r : report.residuals) out << " " << fmt17(r);
  out << "\n";
  if (!report.step_ratios.empty()) {
    out << "step ratios:";
    for (double r : report.step_ratios) out << " " << fmt17(r);
    out << "\n";
  }
  out << "derivative estimate:\n";
  print_matrix(report.derivative, out);
}

}  // namespace

Matrix parse_matrix_spec(const std::string& spec) {
  if (spec.rfind("diag(", 0) == 0 && spec.back() == ')') {
    std::string inner = spec.substr(5, spec.size() - 6);
    std::vector<double> values;
    std::istringstream is(inner);
    std::string token;
    while (std::getline(is, token, ',')) {
      try {
        values.push_back(std::stod(token));
      } catch (const std::exception&) {
        throw ParseError("--matrix: cannot parse diagonal entry \"" + token + "\"");
      }
    }
    if (values.empty()) throw ParseError("--matrix: empty diagonal");
    Matrix m = Matrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
      m(static_cast<Index>(i), static_cast<Index>(i)) = Complex(values[i], 0.0);
    return m;
  }
  // JSON rows: [[1,2],[3,4]] with numbers or [re,im] pairs.
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(spec);
  } catch (const nlohmann::json::exception&) {
    throw ParseError("--matrix: expected diag(...) or a JSON array of rows");
  }
  if (!root.is_array() || root.empty()) throw ParseError("--matrix: expected an array of rows");
  const Index rows = static_cast<Index>(root.size());
  const Index cols = static_cast<Index>(root[0].size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = root[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw ParseError("--matrix: ragged rows");
    for (Index j = 0; j < cols; ++j) {
      const auto& cell = row[static_cast<std::size_t>(j)];
      if (cell.is_number()) {
        m(i, j) = Complex(cell.get<double>(), 0.0);
      } else if (cell.is_array() && cell.size() == 2) {
        m(i, j) = Complex(cell[0].get<double>(), cell[1].get<double>());
      } else {
        throw ParseError("--matrix: entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

CheckTarget builtin_target(const std::string& name, const std::string& matrix_spec,
                           const Tolerances& tol) {
  CheckTarget target;
  target.label = name;
  if (name == "conjugate") {
    target.op = OperatorFamily(
        [tol](Complex z) {
          Matrix m(1, 1);
          m(0, 0) = std::conj(z);
          return GraphOperator::from_matrix(m, tol);
        },
        1, 1, "conjugate");
    return target;
  }
  if (name == "resolvent") {
    if (matrix_spec.empty()) throw ParseError("--builtin resolvent requires --matrix");
    target.op = OperatorFamily::resolvent(parse_matrix_spec(matrix_spec), tol);
    return target;
  }
  if (name == "kernel-line" || name == "kernel-line-orthogonal") {
    RationalMatrixFamily row(1, 2,
                             {RationalEntry{{Complex(1, 0)}, {Complex(1, 0)}},
                              RationalEntry{{Complex(0, 0), Complex(1, 0)}, {Complex(1, 0)}}});
    SubspaceFamily line = kernel_family(OperatorFamily::from_rational(row, tol), tol);
    if (name == "kernel-line") {
      target.sub = std::move(line);
    } else {
      target.raw = [line = std::move(line)](Complex z) { return projector(line(z)); };
    }
    return target;
  }
  throw ParseError("unknown builtin \"" + name +
                   "\" (expected conjugate, resolvent, kernel-line, kernel-line-orthogonal)");
}

CheckTarget file_target(const std::string& path, const Tolerances& tol) {
  CheckTarget target;
  target.label = path;
  FamilyFile file = load_family_file(path);
  target.op = file.to_operator_family(tol);
  if (file.kind == "graph") target.resolution = std::make_pair(*file.w, *file.v);
  return target;
}

int run_gap(const std::string& file_a, const std::string& file_b, Complex at,
            const Tolerances& tol, std::ostream& out) {
  FamilyFile a = load_family_file(file_a);
  FamilyFile b = load_family_file(file_b);
  GraphOperator op_a = a.to_operator_family(tol)(at);
  GraphOperator op_b = b.to_operator_family(tol)(at);
  if (op_a.h1_dim() != op_b.h1_dim() || op_a.h2_dim() != op_b.h2_dim())
    throw DimensionMismatch("gap: families act between different spaces");
  Subspace ga = op_a.graph();
  Subspace gb = op_b.graph();
  out << "delta(A,B) = " << fmt17(delta(ga, gb)) << "\n";
  out << "delta(B,A) = " << fmt17(delta(gb, ga)) << "\n";
  out << "gap = " << fmt17(gap(ga, gb)) << "\n";
  out << "projector_distance = " << fmt17(projector_distance(ga, gb)) << "\n";
  return 0;
}

int run_charmat(const std::string& file, const std::optional<std::string>& relative_file,
                Complex at, const Tolerances& tol, std::ostream& out) {
  GraphOperator t = load_family_file(file).to_operator_family(tol)(at);
  if (!relative_file) {
    print_matrix(characteristic_matrix(t), out);
    return 0;
  }
  GraphOperator s = load_family_file(*relative_file).to_operator_family(tol)(at);
  print_matrix(relative_characteristic_matrix(t, s, tol), out);
  return 0;
}

int run_holo_check(const CheckTarget& target, Complex at, const std::string& mode,
                   const Tolerances& tol, std::ostream& out) {
  DifferentiabilityReport report;
  if (target.raw) {
    report = matrix_family_differentiability(*target.raw, at, tol);
  } else if (mode == "subspace" || (target.sub && !target.op)) {
    SubspaceFamily family = target.sub ? *target.sub : SubspaceFamily::graph_of(*target.op);
    report = subspace_family_differentiability(family, at, tol);
  } else if (mode == "resolution") {
    if (!target.resolution)
      throw ParseError("--mode resolution needs a graph-kind family file");
    const auto& [wfam, vfam] = *target.resolution;
    report = resolution_differentiability([&wfam](Complex z) { return wfam.eval(z); },
                                          [&vfam](Complex z) { return vfam.eval(z); }, at, tol,
                                          target.op ? &*target.op : nullptr);
  } else if (mode == "relchar" || mode.empty()) {
    if (!target.op) throw ParseError("relchar mode needs an operator family");
    report = relchar_differentiability(*target.op, at, tol);
  } else {
    throw ParseError("unknown mode \"" + mode + "\" (expected relchar, resolution, subspace)");
  }
  print_report(report, out);
  return report.classification == Holomorphy::holomorphic ? 0 : 1;
}

namespace {

struct ScanRow {
  double re = 0, im = 0;
  double cr = std::nan("");
  double gap_modulus = std::nan("");
  char cls = 'I';
  int status = 0;
};

char classification_code(Holomorphy h) {
  switch (h) {
    case Holomorphy::holomorphic: return 'H';
    case Holomorphy::not_holomorphic: return 'N';
    case Holomorphy::inconclusive: return 'I';
  }
  return 'I';
}

ScanRow scan_point(const CheckTarget& target, Complex z, const std::string& mode,
                   const Tolerances& tol) {
  ScanRow row;
  row.re = z.real();
  row.im = z.imag();
  try {
    DifferentiabilityReport report;
    if (target.raw) {
      report = matrix_family_differentiability(*target.raw, z, tol);
    } else if (mode == "subspace" || (target.sub && !target.op)) {
      SubspaceFamily family = target.sub ? *target.sub : SubspaceFamily::graph_of(*target.op);
      report = subspace_family_differentiability(family, z, tol);
    } else if (mode == "resolution") {
      const auto& [wfam, vfam] = *target.resolution;
      report = resolution_differentiability([&wfam](Complex w) { return wfam.eval(w); },
                                            [&vfam](Complex w) { return vfam.eval(w); }, z, tol,
                                            nullptr);
    } else {
      report = relchar_differentiability(*target.op, z, tol);
    }
    row.cr = report.cr_residual;
    row.cls = classification_code(report.classification);

    const double radius = tol.fd_steps.back();
    if (target.op) {
      GraphOperator center = (*target.op)(z);
      double modulus = 0.0;
      for (int k = 0; k < 4; ++k) {
        const double angle = 2.0 * M_PI * k / 4;
        const Complex probe = z + Complex(radius * std::cos(angle), radius * std::sin(angle));
        modulus = std::max(modulus, operator_gap((*target.op)(probe), center));
      }
      row.gap_modulus = modulus;
    } else if (target.sub) {
      Subspace center = (*target.sub)(z);
      double modulus = 0.0;
      for (int k = 0; k < 4; ++k) {
        const double angle = 2.0 * M_PI * k / 4;
        const Complex probe = z + Complex(radius * std::cos(angle), radius * std::sin(angle));
        modulus = std::max(modulus, gap((*target.sub)(probe), center));
      }
      row.gap_modulus = modulus;
    }
    row.status = 0;
  } catch (const Error& e) {
    row.status = e.exit_code;
    row.cls = 'I';
  }
  return row;
}

}  // namespace

int run_holo_scan(const CheckTarget& target, const GridSpec& grid, const std::string& mode,
                  const std::string& out_path, const Tolerances& tol, std::ostream& out) {
  if (grid.steps < 1) throw ParseError("--grid: steps must be at least 1");
  if (mode == "resolution" && !target.resolution)
    throw ParseError("--mode resolution needs a graph-kind family file");
  if ((mode == "relchar" || mode.empty()) && !target.op && !target.raw && !target.sub)
    throw ParseError("holo-scan: no probe target");

  std::vector<Complex> points;
  points.reserve(static_cast<std::size_t>(grid.steps) * static_cast<std::size_t>(grid.steps));
  auto coordinate = [&](double lo, double hi, int idx) {
    return grid.steps == 1 ? lo : lo + (hi - lo) * idx / (grid.steps - 1);
  };
  for (int i = 0; i < grid.steps; ++i)
    for (int j = 0; j < grid.steps; ++j)
      points.emplace_back(coordinate(grid.re0, grid.re1, j), coordinate(grid.im0, grid.im1, i));

  // Points are independent; evaluate concurrently, emit in grid order.
  std::vector<ScanRow> rows(points.size());
  std::atomic<std::size_t> cursor{0};
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                           static_cast<unsigned>(points.size())));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= points.size()) break;
        rows[i] = scan_point(target, points[i], mode, tol);
      }
    });
  }
  for (std::thread& t : pool) t.join();

  std::ofstream csv(out_path, std::ios::binary);
  if (!csv) throw ParseError("cannot open output file: " + out_path);
  csv << "re,im,cr_residual,gap_modulus,class,status\n";
  for (const ScanRow& row : rows) {
    csv << fmt17(row.re) << "," << fmt17(row.im) << "," << fmt17(row.cr) << ","
        << fmt17(row.gap_modulus) << "," << row.cls << "," << row.status << "\n";
  }
  out << "wrote " << rows.size() << " rows to " << out_path << "\n";
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, std::ostream& out) {
  std::vector<SuiteResult> results = run_verify_suites(suite, seed);
  bool all_passed = true;
  int property_count = 0;
  for (const SuiteResult& s : results) {
    out << "suite " << s.name << "\n";
    for (const PropertyResult& p : s.properties) {
      ++property_count;
      out << "  " << (p.passed ? "PASS" : "FAIL") << "  " << p.name << "  (" << p.trials
          << " trials, " << p.failures << " failures";
      if (p.reported > 0) out << ", " << p.reported << " reported";
      out << ")";
      if (!p.passed && !p.detail.empty()) out << "  -- " << p.detail;
      out << "\n";
    }
    all_passed = all_passed && s.passed;
  }
  out << "verify: " << (all_passed ? "PASS" : "FAIL") << " (" << results.size() << " suites, "
      << property_count << " properties, seed " << seed << ")\n";
  return all_passed ? 0 : 1;
}

}  // namespace gaplab::cli
