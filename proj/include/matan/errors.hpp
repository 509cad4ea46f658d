#pragma once

#include <stdexcept>
#include <string>

namespace matan {

// Error taxonomy mirrored by the CLI exit codes:
//   ParseError -> 2, CapacityError -> 3, DomainError -> 4.
// InputError covers malformed requests (bad ranges, overlapping sets) and
// maps to the parse exit code.

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct CapacityError : std::runtime_error {
  long long partial_count = -1;
  explicit CapacityError(const std::string& what, long long partial = -1)
      : std::runtime_error(what), partial_count(partial) {}
};

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace matan
