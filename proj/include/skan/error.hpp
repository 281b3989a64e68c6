#pragma once

#include <stdexcept>
#include <string>

namespace skan {

enum class ErrorKind {
  SimplicialIdentityViolation,
  DanglingFace,
  DegenerateGeneratorListed,
  RelationNotSimplicial,
  EmptyInput,
  VertexNotFound,
  InsufficientDimensionBound,
  BudgetExceeded,
  CertificateNotFound,
  TargetNotKan,
  CombinatorialBlowup,
  CrossCheckMismatch,
  NotReduced,
  NotAbelian,
  ActionNotFree,
  SourceNotKan,
  ProjectionNotFibration,
  CertificateMissing,
  TwistingIdentityViolation,
  SectionNotFound,
  IntersectionNotContractible,
  ParseError,
  SchemaError,
  InvalidArgument,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source position.
class ParseFailure : public Error {
 public:
  ParseFailure(int line, int column, const std::string& what)
      : Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& what) { throw Error(k, what); }

}  // namespace skan
