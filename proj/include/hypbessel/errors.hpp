#pragma once

#include <stdexcept>
#include <string>

namespace hypbessel {

/// Argument outside the domain of a function (e.g. r <= 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Parameter outside its admissible range (lambda, dimension, overflow).
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// Bad shape parameters for a profile or pair.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A dimension gate of a theorem is violated.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature failed (NaN integrand or subdivision budget exhausted).
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed job configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hypbessel
