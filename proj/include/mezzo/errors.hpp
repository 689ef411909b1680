#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mezzo {

enum class ErrorKind {
  range,
  structure,
  orientability,
  metric,
  numeric,
  dependency,
  superfluous_assignment,
  incompleteness,
  flatness,
  rank,
  unsupported_base,
  nondegeneracy,
  parity,
  self_duality,
  consistency,
  resonance,
  input,
  reference,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::range: return "range";
    case ErrorKind::structure: return "structure";
    case ErrorKind::orientability: return "orientability";
    case ErrorKind::metric: return "metric";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::dependency: return "dependency";
    case ErrorKind::superfluous_assignment: return "superfluous_assignment";
    case ErrorKind::incompleteness: return "incompleteness";
    case ErrorKind::flatness: return "flatness";
    case ErrorKind::rank: return "rank";
    case ErrorKind::unsupported_base: return "unsupported_base";
    case ErrorKind::nondegeneracy: return "nondegeneracy";
    case ErrorKind::parity: return "parity";
    case ErrorKind::self_duality: return "self_duality";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::resonance: return "resonance";
    case ErrorKind::input: return "input";
    case ErrorKind::reference: return "reference";
  }
  return "unknown";
}

/// Base of every error raised by the library. The kind is stable and is what
/// callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when sign propagation over top simplices hits a contradiction.
class OrientabilityError : public Error {
 public:
  OrientabilityError(std::size_t first, std::size_t second, const std::string& what)
      : Error(ErrorKind::orientability, what), first_(first), second_(second) {}

  std::size_t first_simplex() const noexcept { return first_; }
  std::size_t second_simplex() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/// A subspace that is not carried to itself by one of the monodromy generators.
class FlatnessError : public Error {
 public:
  FlatnessError(std::string stratum, std::size_t generator, const std::string& what)
      : Error(ErrorKind::flatness, what), stratum_(std::move(stratum)), generator_(generator) {}

  const std::string& stratum() const noexcept { return stratum_; }
  std::size_t generator() const noexcept { return generator_; }

 private:
  std::string stratum_;
  std::size_t generator_;
};

/// Errors that point at a particular stratum id.
class StratumError : public Error {
 public:
  StratumError(ErrorKind kind, std::string stratum, const std::string& what)
      : Error(kind, what), stratum_(std::move(stratum)) {}

  const std::string& stratum() const noexcept { return stratum_; }

 private:
  std::string stratum_;
};

}  // namespace mezzo
