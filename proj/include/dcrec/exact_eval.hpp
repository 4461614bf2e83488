#pragma once

// Exact-rational evaluation of T(n), the accuracy oracle for the
// floating-point table. Only defined when every spec field has an exact
// rational form, alpha is a nonnegative integer and beta = 0.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dcrec/model.hpp"

namespace dcrec {

using BigRational = boost::multiprecision::cpp_rational;

inline constexpr std::int64_t kExactEvalLimit = 10'000;

BigRational to_big(const Rational& q);

/// Empty string when exact evaluation is possible, else the reason.
std::string exact_mode_blocker(const RecurrenceSpec& spec);

/// T(n) for n = 0..N as exact rationals (entry 0 unused). Throws
/// Error(Precondition) when exact mode does not apply or N > kExactEvalLimit.
std::vector<BigRational> eval_exact(const RecurrenceSpec& spec, std::int64_t N);

}  // namespace dcrec
