#pragma once

#include <stdexcept>
#include <string>

namespace supenv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NotContained : Error {
    using Error::Error;
};

struct ParityError : Error {
    using Error::Error;
};

struct NotAnIdeal : Error {
    using Error::Error;
};

struct NotHomogeneous : Error {
    using Error::Error;
};

struct ExhaustionUnavailable : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

struct InvalidM : Error {
    using Error::Error;
};

// Parse-time diagnostics carry a 1-based line/column.
struct ParseError : Error {
    int line = 0;
    int col = 0;
    ParseError(const std::string& msg, int l = 0, int c = 0)
        : Error(msg + (l ? " at line " + std::to_string(l) +
                           (c ? ", col " + std::to_string(c) : "")
                         : "")),
          line(l), col(c) {}
};

struct GradingError : ParseError {
    using ParseError::ParseError;
};

struct UnknownName : ParseError {
    using ParseError::ParseError;
};

} // namespace supenv
