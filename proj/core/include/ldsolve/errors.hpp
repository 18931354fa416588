#pragma once

#include <stdexcept>
#include <string>

namespace ldsolve {

enum class ErrorKind {
  DegenerateFactor,
  NonExpandable,
  PoleAtZero,
  PoleAtOne,
  NotMixed,
  ImpureInput,
  UnclassifiableFactor,
  StepCeilingExceeded,
  HypothesisViolated,
  SyntaxError,
  UnknownVariable,
  ParameterLimit,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}
  ErrorKind kind() const noexcept { return kind_; }
  // The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

// Raised by the constraint and rational-function parsers.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& msg)
      : Error(ErrorKind::SyntaxError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Engine work exceeded its configured ceiling while processing one constraint.
class StepCeilingExceeded : public Error {
 public:
  StepCeilingExceeded(std::size_t constraint_index, std::size_t ceiling)
      : Error(ErrorKind::StepCeilingExceeded,
              "constraint " + std::to_string(constraint_index) + " exceeded " +
                  std::to_string(ceiling) + " engine steps"),
        index_(constraint_index) {}
  std::size_t constraint_index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace ldsolve
