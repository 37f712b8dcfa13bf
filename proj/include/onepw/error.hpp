#pragma once

#include <stdexcept>
#include <string>

namespace onepw {

/// Bad caller input: out-of-range ids, violated preconditions.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An object that should satisfy a structural invariant does not
/// (malformed rotation, invalid drawing handed to an operation that needs a valid one).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input is too large for an exponential routine.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace onepw
