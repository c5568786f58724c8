#pragma once

#include <stdexcept>
#include <string>

namespace bellpoly {

/// Base class of every exception raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad scenario, bad urn, mismatched sizes. Callers can fix these.
class InputError : public Error {
public:
    using Error::Error;
};

/// A computation that could not produce a result for well-formed input.
class NumericError : public Error {
public:
    using Error::Error;
};

class InvalidScenario : public InputError {
public:
    using InputError::InputError;
};

class ScenarioTooLarge : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

class InvalidPair : public InputError {
public:
    using InputError::InputError;
};

class InvalidUrn : public InputError {
public:
    using InputError::InputError;
};

class UnsupportedMonomialOrder : public InputError {
public:
    using InputError::InputError;
};

class NotHermitian : public InputError {
public:
    using InputError::InputError;
};

class DegeneratePolytope : public NumericError {
public:
    using NumericError::NumericError;
};

class NoConvergence : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace bellpoly
