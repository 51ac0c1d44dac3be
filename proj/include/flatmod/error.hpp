#pragma once

#include <stdexcept>
#include <string>

namespace flatmod {

enum class ErrorKind {
  Parse,
  Validation,
  EmptyGraph,
  UnknownCluster,
  TraceMismatch,
  InfeasibleDegrees,
  InfeasiblePartition,
  GenerationFailure,
  VertexSetMismatch,
  EmptyInput,
  MissingResults,
  Config,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error thrown by the library. `kind()` lets callers such as
/// the CLI map failures onto exit codes without a catch clause per type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& what) : Error(K, what) {}
};

using ParseError = KindedError<ErrorKind::Parse>;
using ValidationError = KindedError<ErrorKind::Validation>;
using EmptyGraphError = KindedError<ErrorKind::EmptyGraph>;
using UnknownClusterError = KindedError<ErrorKind::UnknownCluster>;
using TraceMismatchError = KindedError<ErrorKind::TraceMismatch>;
using InfeasibleDegreesError = KindedError<ErrorKind::InfeasibleDegrees>;
using InfeasiblePartitionError = KindedError<ErrorKind::InfeasiblePartition>;
using GenerationFailure = KindedError<ErrorKind::GenerationFailure>;
using VertexSetMismatchError = KindedError<ErrorKind::VertexSetMismatch>;
using EmptyInputError = KindedError<ErrorKind::EmptyInput>;
using MissingResultsError = KindedError<ErrorKind::MissingResults>;
using ConfigError = KindedError<ErrorKind::Config>;

}  // namespace flatmod
