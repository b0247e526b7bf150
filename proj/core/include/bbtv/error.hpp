#pragma once

#include <stdexcept>
#include <string>

namespace bbtv {

/// Malformed or inconsistent input data (files, matrices, draw sets).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration or argument values supplied by the caller.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure could not complete (e.g. ABC-MCMC initialization).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bbtv
