#pragma once

#include <stdexcept>
#include <string>

namespace hypercrit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments, malformed input files, model mismatches. CLI exit code 2.
struct InvalidInputError : Error {
    using Error::Error;
};

// A requested object does not exist within the given truncation radius,
// or a required density is missing from a family. CLI exit code 3.
struct NotFoundError : Error {
    using Error::Error;
};

// Operation not defined for this model (e.g. tree-only boundary ops).
struct UnsupportedOperationError : Error {
    using Error::Error;
};

// An internal invariant failed; always a bug. CLI exit code 4.
struct InvariantViolationError : Error {
    using Error::Error;
};

}  // namespace hypercrit
