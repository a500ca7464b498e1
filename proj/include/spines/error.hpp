#pragma once

#include <stdexcept>
#include <string>

namespace spines {

enum class ErrorCode {
    InvalidArgument,
    NotAnEdge,
    ZeroVector,
    NotSaturated,
    DirichletViolation,
    TooLarge,
    EmptyBody,
    CoverageCapExceeded,
    VerificationFailed,
    DegenerateStrip,
    CoverageFailed,
};

const char* to_string(ErrorCode code) noexcept;

/**
 * Exception type used throughout the library. The code lets callers (the CLI
 * in particular) distinguish usage errors from failed checks without parsing
 * messages.
 */
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace spines
