// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vgb {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside its mathematical domain (e.g. x not in [0,1]).
class DomainViolation : public Error {
public:
    using Error::Error;
};

/// Vector/matrix sizes do not agree.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A pivot fell below the singularity threshold during factorization.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// Weight exponents violate alpha > -1, beta > -1 or alpha + beta + 1 >= 0.
class InvalidExponent : public Error {
public:
    using Error::Error;
};

/// A user-supplied function returned NaN or Inf where a finite value is required.
class NonFiniteEvaluation : public Error {
public:
    using Error::Error;
};

/// The collocation system is singular to working precision.
class IllPosedDiscretization : public Error {
public:
    using Error::Error;
};

/// Problem id not present in the experiment registry.
class UnknownProblem : public Error {
public:
    using Error::Error;
};

/// File I/O failure; the message carries the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace vgb
