#pragma once

#include <stdexcept>
#include <string>

namespace germen {

/// Bad user input: malformed files, unknown ids, threshold misuse.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A broken internal invariant. Never expected on valid input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace germen
