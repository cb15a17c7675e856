#pragma once

#include <stdexcept>
#include <string>

namespace precode {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument / configuration value.
class ParamError : public Error {
public:
    explicit ParamError(const std::string& msg) : Error(msg) {}
};

// Dimension or symmetry mismatch on a matrix input.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// A triangular factor is numerically singular; carries the offending column.
class SingularFactorError : public Error {
public:
    SingularFactorError(const std::string& msg, int column)
        : Error(msg), column_(column) {}
    int column() const { return column_; }

private:
    int column_;
};

// The L_g allocation leaves too few spatial dimensions for some group.
class FeasibilityError : public Error {
public:
    FeasibilityError(const std::string& msg, int group)
        : Error(msg), group_(group) {}
    int group() const { return group_; }

private:
    int group_;
};

}  // namespace precode
