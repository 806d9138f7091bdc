#pragma once

#include "gaplab/families.hpp"

#include <optional>
#include <string>

namespace gaplab {

/// Parsed form of the on-disk family format (JSON).
///
///   {
///     "format_version": "1",
///     "kind": "matrix",            // or "graph"
///     "n1": 1, "n2": 1,
///     "entries": [[ {"num": [[0,0],[1,0]], "den": [[1,0]]} ]]
///   }
///
/// "matrix" carries an n2 x n1 grid of rational entries (an
/// everywhere-defined operator family); "graph" carries "k" plus rational
/// grids "W" (n1 x k) and "V" (n2 x k) forming a resolution pair
/// Dom = Ran W(z), T(W u) = V u.  Complex coefficients are [re, im] pairs
/// (bare numbers allowed for real values), polynomial coefficients ascend by
/// degree.  Zero denominators and shape mismatches are rejected with
/// positioned messages.
struct FamilyFile {
  std::string format_version;
  std::string kind;
  Index n1 = 0;
  Index n2 = 0;
  Index k = 0;
  std::optional<RationalMatrixFamily> matrix;  // kind == "matrix"
  std::optional<RationalMatrixFamily> w;       // kind == "graph"
  std::optional<RationalMatrixFamily> v;       // kind == "graph"

  OperatorFamily to_operator_family(Tolerances tol = {}) const;
};

FamilyFile parse_family_file(const std::string& text);
FamilyFile load_family_file(const std::string& path);

/// Tolerance overrides from a JSON config ({"rank_tol": ..., "fd_steps":
/// [...]}); missing keys keep their defaults.
Tolerances load_tolerances_file(const std::string& path);

/// Reads the config named by GAPLAB_TOLERANCES, if set.
Tolerances tolerances_from_env();

}  // namespace gaplab
