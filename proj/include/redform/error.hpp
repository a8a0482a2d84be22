#pragma once

#include <stdexcept>
#include <string>

namespace redform {

/// Raised on contract violations of the algebra layer (zero denominators,
/// expansion at a pole, singular gauge matrices).
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when user-supplied input (files, flags) cannot be used.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised on malformed textual input; carries a 1-based line and column.
class ParseError : public InputError {
public:
    ParseError(const std::string& reason, int line, int column)
        : InputError(reason + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          reason_(reason), line_(line), column_(column) {}

    const std::string& reason() const noexcept { return reason_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    std::string reason_;
    int line_;
    int column_;
};

}  // namespace redform
