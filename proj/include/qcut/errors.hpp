// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qcut {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numeric argument is outside its admissible range (negative k, r > 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Operand shapes do not match the operation.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A constructed object violates one of its invariants (non-Hermitian density
// operator, decomposition that does not resolve to the identity, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// File or stream could not be written.
class IoError : public Error {
public:
    using Error::Error;
};

// Observable not expressible in the supported (computational-diagonal) form.
class UnsupportedObservable : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace qcut
