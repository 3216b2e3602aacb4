#pragma once

#include <stdexcept>
#include <string>

namespace schottky {

/// Error kinds surfaced by the library. The CLI maps these to exit codes.
enum class ErrorKind {
    ImageIsLine,
    DiscsOverlapOrNested,
    IsIdentity,
    NotAdmissible,
    BudgetExceeded,
    InfeasibleMargin,
    BadLengths,
    OutOfDomain,
    HypothesisViolated,
    NotAHomeomorphism,
    ParseError,
    SchemaError,
    IoError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace schottky
