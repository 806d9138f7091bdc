#pragma once

#include "gaplab/family_io.hpp"
#include "gaplab/holomorphy.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace gaplab::cli {

/// What a check or scan runs against: an operator family, a plain subspace
/// family, a directly probed bounded matrix family, and (for graph-kind
/// files) the resolution pair.
struct CheckTarget {
  std::optional<OperatorFamily> op;
  std::optional<SubspaceFamily> sub;
  std::optional<MatrixFamilyFn> raw;
  std::optional<std::pair<RationalMatrixFamily, RationalMatrixFamily>> resolution;
  std::string label;
};

/// Named demo families that a rational file cannot express.
CheckTarget builtin_target(const std::string& name, const std::string& matrix_spec,
                           const Tolerances& tol);
CheckTarget file_target(const std::string& path, const Tolerances& tol);

/// "diag(1,2)" or a JSON array of rows.
Matrix parse_matrix_spec(const std::string& spec);

int run_gap(const std::string& file_a, const std::string& file_b, Complex at,
            const Tolerances& tol, std::ostream& out);

int run_charmat(const std::string& file, const std::optional<std::string>& relative_file,
                Complex at, const Tolerances& tol, std::ostream& out);

int run_holo_check(const CheckTarget& target, Complex at, const std::string& mode,
                   const Tolerances& tol, std::ostream& out);

struct GridSpec {
  double re0 = 0, re1 = 0, im0 = 0, im1 = 0;
  int steps = 0;
};

int run_holo_scan(const CheckTarget& target, const GridSpec& grid, const std::string& mode,
                  const std::string& out_path, const Tolerances& tol, std::ostream& out);

int run_verify(const std::string& suite, std::uint64_t seed, std::ostream& out);

}  // namespace gaplab::cli
