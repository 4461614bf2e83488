#pragma once

/**
 * @file model.hpp
 * @brief Recurrence data model and admissibility checks.
 *
 * A recurrence has the form
 *
 *   T(n) = c * n^alpha * log2(n)^beta + sum_i a_i * T(ceil(b_i * n))   for n >= n0
 *   T(n) = d                                                           for n <  n0
 *
 * with c, d > 0, alpha, beta >= 0, a_i > 0, 0 < b_i < 1 and
 * n0 >= max_i 1/(1 - b_i). The last condition makes ceil(b_i * n) <= n - 1
 * for every n >= n0, so T is well defined bottom-up.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcrec/error.hpp"
#include "dcrec/number.hpp"

namespace dcrec {

struct RecTerm {
    Number a;  ///< subproblem count (may be fractional)
    Number b;  ///< shrink ratio in (0, 1)

    bool operator==(const RecTerm&) const = default;
};

struct DrivingTerm {
    Number c{1.0};
    Number alpha{0.0};
    Number beta{0.0};

    bool operator==(const DrivingTerm&) const = default;
};

/// Unvalidated spec fields. n0 == nullopt means "smallest admissible".
struct RawSpec {
    DrivingTerm driving;
    std::vector<RecTerm> terms;
    std::optional<std::int64_t> n0;
    Number d{1.0};
};

enum class ValidationCode {
    NonPositiveCoefficient,
    RatioOutOfRange,
    NegativeExponent,
    ThresholdTooSmall,
    EmptyTermList,
};

enum class SpecField { C, Alpha, Beta, D, N0, TermA, TermB, Terms };

const char* to_string(ValidationCode code);

struct ValidationIssue {
    ValidationCode code;
    SpecField field;
    std::size_t term_index = 0;  ///< meaningful for TermA / TermB
    std::string message;
};

struct ValidationResult;
ValidationResult validate(const RawSpec& raw);

/// A validated, canonical recurrence: terms sorted by strictly ascending b,
/// equal ratios merged by summing their coefficients. Immutable.
class RecurrenceSpec {
public:
    const DrivingTerm& driving() const noexcept { return driving_; }
    double c() const noexcept { return driving_.c.value(); }
    double alpha() const noexcept { return driving_.alpha.value(); }
    double beta() const noexcept { return driving_.beta.value(); }
    std::span<const RecTerm> terms() const noexcept { return terms_; }
    std::size_t k() const noexcept { return terms_.size(); }
    std::int64_t n0() const noexcept { return n0_; }
    const Number& d() const noexcept { return d_; }

    /// Smallest ratio; the first term after canonicalization.
    const Number& b_min() const noexcept { return terms_.front().b; }
    const Number& b_max() const noexcept { return terms_.back().b; }

    RawSpec raw() const;

    bool operator==(const RecurrenceSpec&) const = default;

private:
    friend ValidationResult validate(const RawSpec& raw);

    RecurrenceSpec() = default;

    DrivingTerm driving_;
    std::vector<RecTerm> terms_;
    std::int64_t n0_ = 2;
    Number d_{1.0};
};

struct ValidationResult {
    std::optional<RecurrenceSpec> spec;
    std::vector<ValidationIssue> issues;

    bool ok() const noexcept { return spec.has_value(); }
};

/// Checks every admissibility condition and canonicalizes the term list.
/// Reports one issue per violated condition.
ValidationResult validate(const RawSpec& raw);

class ValidationFailure : public Error {
public:
    explicit ValidationFailure(std::vector<ValidationIssue> issues);
    const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ValidationIssue> issues_;
};

/// validate() that throws ValidationFailure instead of returning issues.
RecurrenceSpec validated(const RawSpec& raw);

/// Smallest integer n0 with n0 >= 1/(1 - b) for every term.
/// Throws Error(Validation) on an empty list.
std::int64_t auto_n0(std::span<const RecTerm> terms);

/// ceil(b * n), computed exactly: from the rational form of b when known,
/// otherwise from the exact product of the double b and n.
std::int64_t ceil_index(const Number& b, std::int64_t n);

/// Precomputed form of ceil_index for one ratio.
class CeilIndex {
public:
    explicit CeilIndex(const Number& b);

    std::int64_t operator()(std::int64_t n) const;

    /// Largest m with ceil(b * m) <= bound (bound >= 0).
    std::int64_t max_preimage(std::int64_t bound) const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 0;  // 0 when only the double is known
    double value_ = 0.0;
};

}  // namespace dcrec
