#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gaussconv {

// Argument and configuration errors use std::invalid_argument directly.

/// A computation would exceed a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t cap)
      : std::runtime_error(what), cap_(cap) {}
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t cap_;
};

/// The input lies outside the mathematical domain of an operation
/// (e.g. a gamma factor requested for a non-regular character).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An internal consistency gate failed; the computation cannot be trusted.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gaussconv
