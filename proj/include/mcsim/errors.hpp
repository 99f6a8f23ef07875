#pragma once

#include <stdexcept>
#include <string>

namespace mcsim {

// Base for everything thrown by the library on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid value or operation on otherwise well-formed input (unknown qubit,
// parameter out of range, evaluation on a denominator zero, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Request exceeds a hard resource ceiling of the chosen backend.
struct CapacityError : Error {
  explicit CapacityError(const std::string& what) : Error(what) {}
};

// Bonding attempt index larger than the number of available leaves.
struct AttemptExceedsLeavesError : DomainError {
  AttemptExceedsLeavesError() : DomainError("attempt exceeds leaves") {}
};

}  // namespace mcsim
