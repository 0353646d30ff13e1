#pragma once

#include <stdexcept>
#include <string>

namespace agc {

/// Root of every error the toolkit throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TypeErrorKind { UnboundVariable, TypeMismatch, NestingTooDeep };

class TypeError : public Error {
 public:
  TypeError(TypeErrorKind kind, std::string message, const void* node = nullptr)
      : Error(std::move(message)), kind_(kind), node_(node) {}

  TypeErrorKind kind() const { return kind_; }
  // Identity of the offending AST node, used by the parser to attach spans.
  const void* node() const { return node_; }

 private:
  TypeErrorKind kind_;
  const void* node_;
};

enum class GraphErrorKind {
  CycleDetected,
  PortTypeMismatch,
  UnlinkedInput,
  DuplicateLink,
  UnknownComponent,
  UnknownPort,
  DuplicateComponent,
  InvalidContract,
};

class GraphError : public Error {
 public:
  GraphError(GraphErrorKind kind, std::string message)
      : Error(std::move(message)), kind_(kind) {}
  GraphErrorKind kind() const { return kind_; }

 private:
  GraphErrorKind kind_;
};

enum class EvalErrorKind { UnboundVariable, DomainNotASet, BudgetExceeded, IllTyped };

class EvalError : public Error {
 public:
  EvalError(EvalErrorKind kind, std::string message)
      : Error(std::move(message)), kind_(kind) {}
  EvalErrorKind kind() const { return kind_; }

 private:
  EvalErrorKind kind_;
};

enum class CompositionErrorKind { ObligationNotDischarged, UnsupportedTopology };

class CompositionError : public Error {
 public:
  CompositionError(CompositionErrorKind kind, std::string message)
      : Error(std::move(message)), kind_(kind) {}
  CompositionErrorKind kind() const { return kind_; }

 private:
  CompositionErrorKind kind_;
};

}  // namespace agc
