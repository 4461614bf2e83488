#pragma once

/**
 * @file certificate.hpp
 * @brief Witness constants for the O(n^r) upper bound and their checker.
 *
 * Applies when beta = 0 and the characteristic root r is a positive integer
 * with r > alpha. With b_min the smallest ratio:
 *
 *   f3 = c / (g(alpha) - 1)
 *   f2 = any positive constant (default 1)
 *   f1 = f2 + f3 + 1
 *   m0 = max{ n0, 1/b_min, (f1 * 2^r / b_min / (f2 * (g(r - 1/2) - 1)))^2 }
 *   M  = max_{n < m0} max(1, T(n))
 *
 * and S(n) = f1 n^r - f2 n^(r-1/2) - f3 n^alpha. The auxiliary recurrence
 * R(n) = 1 below m0 and c n^alpha + sum a_i R(ceil(b_i n)) above it satisfies
 * T <= M R <= M S, so T(n) <= M f1 n^r.
 */

#include <cstdint>
#include <optional>
#include <string_view>

#include "dcrec/characteristic.hpp"
#include "dcrec/evaluator.hpp"

namespace dcrec {

struct Certificate {
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
    double m0 = 0.0;
    double M = 0.0;
    double r = 0.0;  ///< the integer root, as a real
    double b_min = 0.0;
    double alpha = 0.0;
    double g_alpha = 0.0;       ///< g(alpha)
    double g_half_below = 0.0;  ///< g(r - 1/2)

    /// ceil(m0): the first n handled by the recursive case of R.
    std::int64_t m0_ceil() const;
};

enum class NotApplicableReason { BetaNonzero, RootNotDominant, RootNotInteger };

const char* to_string(NotApplicableReason reason);

class NotApplicable : public Error {
public:
    NotApplicable(NotApplicableReason reason, const std::string& detail);
    NotApplicableReason reason() const noexcept { return reason_; }

private:
    NotApplicableReason reason_;
};

inline constexpr double kIntegerRootTolerance = 1e-9;

/// Builds the witness constants. Throws NotApplicable when beta != 0,
/// r <= alpha, or r is not a positive integer within 1e-9; evaluator errors
/// propagate from computing M.
Certificate construct(const RecurrenceSpec& spec, const RootResult& root, double f2 = 1.0,
                      const EvalOptions& options = {});

/// f1 n^r - f2 n^(r-1/2) - f3 n^alpha
double S_value(const Certificate& cert, std::int64_t n);

struct Witness {
    std::int64_t n = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct CheckResult {
    bool ok = true;
    std::optional<Witness> witness;  ///< first failure
};

struct VerificationReport {
    std::int64_t N = 0;
    CheckResult base;         ///< R(n) = 1 <= S(n) for n < m0
    CheckResult induction;    ///< R(n) <= S(n) for ceil(m0) <= n <= N
    CheckResult closing1;     ///< c <= f3 (g(alpha) - 1), to 1e-12
    CheckResult closing2;     ///< f1 2^r n^(r-1) / b_min <= f2 (g(r-1/2) - 1) n^(r-1/2)
    CheckResult t_le_mr;      ///< T(n) <= M R(n) for n <= N
    CheckResult lower_bound;  ///< T(n) >= c n^alpha for n0 <= n <= N

    bool passed() const;

    struct Failure {
        std::string_view check;
        Witness witness;
    };
    /// The first failing check, in the order the fields are declared.
    std::optional<Failure> first_failure() const;
};

inline constexpr double kClosingIdentityTolerance = 1e-12;

/// Verifies the induction chain numerically up to N. Failures are reported,
/// not thrown. Requires N >= ceil(m0) (Error(Precondition) otherwise).
VerificationReport verify(const Certificate& cert, const RecurrenceSpec& spec, std::int64_t N,
                          const EvalOptions& options = {});

/// (n + 1/b_min)^r <= n^r + 2^r n^(r-1) / b_min
bool binomial_step_holds(const Certificate& cert, std::int64_t n);

/// max_{n <= N} T(n) / n^r, to compare against M * f1.
double max_growth_ratio(const EvalTable& table, double r);

}  // namespace dcrec
