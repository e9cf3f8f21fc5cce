#pragma once

#include <stdexcept>
#include <string>

namespace hopfmm {

enum class ErrorKind {
    DivisionByZero,
    RingMismatch,
    NonTerminating,
    ArityMismatch,
    SyntaxError,
    UnknownGenerator,
    ValidationFailed,
    IncompatibleSources,
    TruncationUnsound,
    NotFlat,
    SingularPairing,
    InvalidInput,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
    Error(ErrorKind kind, const std::string& msg, int line, int col)
        : std::runtime_error(std::string(error_kind_name(kind)) + " at " + std::to_string(line) + ":" +
                             std::to_string(col) + ": " + msg),
          kind_(kind), line_(line), col_(col) {}

    ErrorKind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return col_; }

private:
    ErrorKind kind_;
    int line_ = 0;
    int col_ = 0;
};

}  // namespace hopfmm
