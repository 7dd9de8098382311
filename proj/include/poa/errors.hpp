#pragma once

#include <stdexcept>
#include <string>

namespace poa {

// Caller violated a documented precondition (bad argument shape or value).
class ContractError : public std::invalid_argument {
 public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// Input is well-formed but outside the sizes this implementation enumerates.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

// Numerical routine left its region of validity (e.g. CDF not normalized).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Combination of options has no implementation on purpose.
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace poa
