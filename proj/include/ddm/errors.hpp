#pragma once

#include <stdexcept>

namespace ddm {

// Violated model/configuration invariant (CLI exit code 3).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Unreadable or malformed input (CLI exit code 2).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ddm
