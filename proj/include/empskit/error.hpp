#pragma once

#include <stdexcept>
#include <string>

namespace empskit {

/// Input violates a documented invariant (normalization, hermiticity, parameter range).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument is out of range for the operation (qubit index, subset, dimension mismatch).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested system exceeds the supported 12-qubit capacity.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Iterative routine failed to reach its tolerance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace empskit
