#pragma once

// Command-line front end: solve, eval, fit, certify.
//
// Exit codes
//   0  success (fit: CONSISTENT, certify: PASS)
//   1  usage, parse or validation error
//   2  internal numeric failure
//   3  evaluation limit exceeded or floating-point overflow
//   4  fit verdict INCONSISTENT
//   5  certify: certificate not applicable to this recurrence
//   6  certify: verification failed
//
// Reports go to stdout; diagnostics go to stderr. Exit codes 1-3 never
// write to stdout.

#include <iosfwd>
#include <string>
#include <vector>

namespace dcrec::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kNumericFailure = 2,
    kEvalLimit = 3,
    kInconsistent = 4,
    kNotApplicable = 5,
    kVerificationFailed = 6,
};

/// Environment variable overriding the default 10^7 evaluation cap.
inline constexpr const char* kEvalLimitEnv = "RECURRENCE_EVAL_LIMIT";

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dcrec::cli
