#pragma once

#include <stdexcept>
#include <string>

namespace dcrec {

enum class ErrorCode {
    Validation,
    LimitExceeded,
    Overflow,
    RecursionDepthExceeded,
    BracketOverflow,
    TooFewSamples,
    NonPositiveValue,
    NotApplicable,
    Precondition,
};

const char* to_string(ErrorCode code);

/// Base class for every error raised by the library. The code is stable and
/// is what callers (and the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dcrec
