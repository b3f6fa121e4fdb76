#pragma once

#include <stdexcept>
#include <string>

namespace mcc {

// Malformed or unusable input (bad CSV, schema violation, bad config).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A structural invariant was broken inside the library.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace mcc
