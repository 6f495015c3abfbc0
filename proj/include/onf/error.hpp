#pragma once

#include <stdexcept>
#include <string>

namespace onf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid user input or mismatched inputs (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

// A numerical procedure failed to produce an acceptable answer (CLI exit code 3).
struct NumericalError : Error {
    using Error::Error;
};

// Argument outside the domain of a function.
struct DomainError : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace onf
