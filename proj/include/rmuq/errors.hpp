// Error taxonomy shared by all rmuq modules.
#pragma once

#include <stdexcept>
#include <string>

namespace rmuq {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid argument values (parameters outside their stated domain).
struct DomainError : Error {
  using Error::Error;
};

// Operation invoked on an object that does not satisfy the operation's
// contract (e.g. sensitivity density of a non-orthogonal measure).
struct ContractError : Error {
  using Error::Error;
};

// Structurally degenerate request: zero variance, zero trace, null restriction.
struct DegenerateError : Error {
  using Error::Error;
};

// Integration strategy cannot handle the request.
struct StrategyError : Error {
  using Error::Error;
};

// Iterative solver failed to converge.
struct SolverError : Error {
  using Error::Error;
};

}  // namespace rmuq
