// errors.hpp — exception taxonomy; the CLI maps the three bases to exit codes.

#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

// Base of every library error.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// User-input / configuration problems (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

// File-system problems (CLI exit code 4).
class IoError : public Error {
public:
    using Error::Error;
};

// Everything else below is a numerical / contract failure (CLI exit code 3).

class NonHermitian : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class UnnormalizedInput : public Error {
public:
    using Error::Error;
};

class NegativeWeight : public Error {
public:
    using Error::Error;
};

class ZeroTotalWeight : public Error {
public:
    using Error::Error;
};

class AssumptionViolated : public Error {
public:
    using Error::Error;
};

// Config family.

class ParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class SchemaError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class ValidationError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class InvalidConfig : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class InvalidSchedule : public ConfigError {
public:
    using ConfigError::ConfigError;
};

} // namespace zeno
