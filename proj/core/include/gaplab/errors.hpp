#pragma once

#include "gaplab/types.hpp"

#include <stdexcept>
#include <string>

namespace gaplab {

/// Exit-code family used by the CLI; library errors carry the code so the
/// front end maps failures mechanically.
///   2 usage/parse, 3 dimension, 4 transversality/complementarity,
///   5 numeric failure.
struct Error : std::runtime_error {
  int exit_code;
  Error(std::string msg, int code) : std::runtime_error(std::move(msg)), exit_code(code) {}
};

struct ParseError : Error {
  explicit ParseError(std::string msg) : Error(std::move(msg), 2) {}
};

struct PreconditionViolated : Error {
  explicit PreconditionViolated(std::string msg) : Error(std::move(msg), 2) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(std::string msg) : Error(std::move(msg), 3) {}
};

struct NotComplementary : Error {
  explicit NotComplementary(std::string msg) : Error(std::move(msg), 4) {}
};

struct NotTransversal : Error {
  explicit NotTransversal(std::string msg) : Error(std::move(msg), 4) {}
};

/// A candidate graph subspace intersects {0} (+) H2; the offending direction
/// is kept so callers can report it.
struct NotAGraph : Error {
  Vector witness;
  NotAGraph(std::string msg, Vector w) : Error(std::move(msg), 4), witness(std::move(w)) {}
};

struct AdjointIsRelation : Error {
  explicit AdjointIsRelation(std::string msg) : Error(std::move(msg), 4) {}
};

struct NotInvertible : Error {
  explicit NotInvertible(std::string msg) : Error(std::move(msg), 5) {}
};

struct NotLeftInvertible : Error {
  explicit NotLeftInvertible(std::string msg) : Error(std::move(msg), 5) {}
};

struct NotInjective : Error {
  explicit NotInjective(std::string msg) : Error(std::move(msg), 5) {}
};

struct NotSurjective : Error {
  explicit NotSurjective(std::string msg) : Error(std::move(msg), 5) {}
};

struct NotInDomain : Error {
  explicit NotInDomain(std::string msg) : Error(std::move(msg), 5) {}
};

struct NotHermitian : Error {
  explicit NotHermitian(std::string msg) : Error(std::move(msg), 5) {}
};

/// A family could not be evaluated at a probe point (pole, construction
/// failure); carries the failing parameter.
struct EvaluationFailed : Error {
  Complex at;
  EvaluationFailed(std::string msg, Complex z) : Error(std::move(msg), 5), at(z) {}
};

}  // namespace gaplab
