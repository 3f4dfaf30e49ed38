#pragma once

#include <stdexcept>
#include <string>

namespace softextrap {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The perturbation level is too large for any polynomial degree >= 1.
class NoExtrapolationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Sampling grid violates the extent/density conditions and no override was given.
class GridError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Least-squares system cannot determine all coefficients.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace softextrap
