#pragma once

#include <stdexcept>
#include <string>

namespace valence {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caller violated a precondition (mismatched specs, unknown letter, ...).
struct UsageError : Error {
  using Error::Error;
};

// A configurable resource guard tripped. Never a wrong answer: the
// computation stops instead of guessing.
struct ResourceLimitError : Error {
  using Error::Error;
};

// Machine-checked invariant failed. For pipeline runs this usually means
// the input automaton does not accept the word problem it claims to.
struct ContractViolation : Error {
  using Error::Error;
};

}  // namespace valence
