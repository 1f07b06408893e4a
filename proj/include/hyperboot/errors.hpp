#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperboot {

// Root of everything the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// A configured size guard (state table, exhaustive enumeration) would be exceeded.
class GuardError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& what)
        : Error("parse error at position " + std::to_string(position) + ": " + what),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class EvalError : public Error {
public:
    using Error::Error;
};

}  // namespace hyperboot
