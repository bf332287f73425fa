#pragma once

#include <stdexcept>
#include <string>

namespace levy_scl {

/// Structural assumption violated by a measure, coefficient or flux.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bad scalar argument (non-positive cut, p < 1, empty sample, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Caller broke an operation contract (grid mismatch, support touching the boundary, ...).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Quadrature non-convergence, blow-up, failed linear solve.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad solver or experiment configuration, detected before any stepping.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace levy_scl
