#pragma once

/**
 * @file parser.hpp
 * @brief Text form of a recurrence.
 *
 *   spec      := equation (";" directive)*
 *   equation  := "T(n)" "=" addend ("+" addend)*
 *   addend    := recterm | driveterm
 *   recterm   := [number "*"] "T(ceil(" number "*n))"
 *   driveterm := number ["*" npart] | npart
 *   npart     := "n" ["^" number] ["*" "log(n)" ["^" number]] | "log(n)" ["^" number]
 *   directive := "n0" "=" ("auto" | integer) | "d" "=" number
 *   number    := decimal | integer "/" integer
 *
 * Whitespace between tokens is ignored and "#" starts a comment that runs to
 * the end of the line. log(n) is the base-2 logarithm. Exactly one driving
 * term is required; n0 defaults to the smallest admissible value and d to 1.
 *
 * Example: "T(n) = T(ceil(1/5*n)) + T(ceil(7/10*n)) + 3*n ; n0=4 ; d=1"
 */

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "dcrec/error.hpp"
#include "dcrec/model.hpp"

namespace dcrec {

/// Byte range [start, end) in the parsed text.
struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;

    bool operator==(const SourceSpan&) const = default;
};

enum class ParseErrorKind {
    UnexpectedToken,
    MissingDrivingTerm,
    DuplicateDirective,
    BadNumber,
    Invalid,  ///< syntax was fine; validation rejected the recurrence
};

const char* to_string(ParseErrorKind kind);

class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, SourceSpan span, std::string message,
               std::optional<ValidationCode> validation = std::nullopt);

    ParseErrorKind kind() const noexcept { return kind_; }
    SourceSpan span() const noexcept { return span_; }
    const std::string& detail() const noexcept { return detail_; }
    /// Set when kind() == Invalid.
    std::optional<ValidationCode> validation() const noexcept { return validation_; }

    /// "line:col: Kind: message" followed by the source line and a caret marker.
    std::string render(std::string_view text) const;

private:
    ParseErrorKind kind_;
    SourceSpan span_;
    std::string detail_;
    std::optional<ValidationCode> validation_;
};

/// Throws ParseError on any syntax or validation failure.
RecurrenceSpec parse(std::string_view text);

/// parse(canonical(s)) == s for every valid spec.
std::string canonical(const RecurrenceSpec& spec);

}  // namespace dcrec
