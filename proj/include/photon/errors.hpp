#pragma once

#include <stdexcept>
#include <string>

namespace photon {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Momentum point on (or numerically too close to) the line |n x k| = 0 where
/// the Berry connection is singular.
class VortexLineError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Quantum numbers that the requested system does not admit (s states of the
/// single-photon and beam problems, |m| > j, ...).
class ForbiddenQuantumNumbers : public DomainError {
public:
  using DomainError::DomainError;
};

/// Finite-difference step too coarse for the requested accuracy.
class StepTooLargeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Root bracketing failed: the matching function does not change sign.
class NoSignChangeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The ODE integrator gave up (step underflow or non-finite values).
class IntegrationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Point requested outside the support of a sampled state.
class OutOfGridError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Malformed state-description document.
class StateFormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace photon
