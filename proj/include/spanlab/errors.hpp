#pragma once

#include <stdexcept>
#include <string>

namespace spanlab {

// Malformed or mismatched input (vertex counts disagree, bad file, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arguments outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The request is well-formed but exceeds an enumeration cap.
class CapabilityError : public std::runtime_error {
 public:
  CapabilityError(const std::string& what, std::string cap)
      : std::runtime_error(what + " (cap: " + cap + ")"), cap_(std::move(cap)) {}

  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string cap_;
};

}  // namespace spanlab
