#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace poislin {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched ambient coordinate systems, or a label that is not declared.
class CoordinateError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// Violated operation precondition (bad input to a pipeline stage).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A verification the library performs on its own output failed. This
/// indicates a bug (usually a sign convention), not bad user input.
class InternalError : public Error {
public:
    using Error::Error;
};

/// The higher-order part of a semi-linear structure is not spanned by the
/// wedges of Casimir vector fields with Casimir coefficients.
class TailSpanError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace poislin
