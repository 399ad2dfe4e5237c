#pragma once

#include <stdexcept>
#include <string>

namespace glnlab {

// Out-of-range instance parameters (m, y, N for Tribes, ...).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Length or alphabet mismatch between a value and its Params.
class EncodingError : public std::invalid_argument {
public:
    explicit EncodingError(const std::string& what) : std::invalid_argument(what) {}
};

// An exact engine was asked to enumerate beyond its guard.
class ScaleError : public std::runtime_error {
public:
    explicit ScaleError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was applied outside the domain where it is defined.
class PreconditionError : public std::logic_error {
public:
    explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace glnlab
