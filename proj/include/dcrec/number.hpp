#pragma once

/**
 * @file number.hpp
 * @brief Real values that remember their exact rational form.
 *
 * Every literal in the recurrence DSL is a terminating decimal or a fraction,
 * so it has an exact rational value. Keeping that value around lets the
 * evaluator compute ceil(b*n) exactly (0.2*5 is 1, not 1.0000000000000002)
 * and lets the classifier decide g(alpha) == 1 without rounding.
 *
 * Invariant: when exact() is present, value() is the double nearest to it.
 */

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dcrec {

/// Reduced fraction num/den with den > 0. Both parts fit in int64.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    /// Builds a reduced rational; nullopt when den == 0 or the reduced
    /// parts do not fit.
    static std::optional<Rational> make(__int128 num, __int128 den);

    double to_double() const;
    std::string to_string() const;  // terminating decimal when possible, else "p/q"

    bool operator==(const Rational&) const = default;
    std::strong_ordering operator<=>(const Rational& other) const;
};

std::optional<Rational> checked_add(const Rational& x, const Rational& y);

class Number {
public:
    Number() = default;
    Number(double v) : Number(from_double(v)) {}  // NOLINT: value-type convenience

    /// The exact form is the shortest decimal that round-trips to v, when
    /// that decimal fits a 64-bit fraction.
    static Number from_double(double v);
    static Number from_rational(Rational q);

    /// Accepts decimals ("0.25", "-3", "1e-3") and fractions ("7/10").
    static std::optional<Number> parse(std::string_view text);

    double value() const noexcept { return value_; }
    const std::optional<Rational>& exact() const noexcept { return exact_; }
    bool is_integer() const;

    /// Canonical text; parse(to_string()) reproduces *this exactly.
    std::string to_string() const;

    bool operator==(const Number&) const = default;

private:
    double value_ = 0.0;
    std::optional<Rational> exact_ = Rational{0, 1};
};

Number operator+(const Number& x, const Number& y);

/// Orders by value; ties between distinct rationals with the same nearest
/// double are broken by the exact form.
bool number_less(const Number& x, const Number& y);
bool number_same(const Number& x, const Number& y);

}  // namespace dcrec
