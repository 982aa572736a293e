#pragma once

#include <stdexcept>
#include <string>

namespace qflda {

/// Bad input: out-of-range parameter, malformed state, wrong dimensions.
/// The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Regularized within-class scatter could not be inverted.
class SingularMatrixError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// File could not be read, parsed or written. The CLI maps this to exit code 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qflda
