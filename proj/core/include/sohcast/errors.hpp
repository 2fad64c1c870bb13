#pragma once

#include <stdexcept>
#include <string>

namespace sohcast {

/// Dimension disagreement between tensors or between a model and its input.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input data (CSV rows, checkpoint files, bad config values).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric breakdown during computation (NaN/Inf loss).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sohcast
