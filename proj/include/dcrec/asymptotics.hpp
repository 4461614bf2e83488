#pragma once

/**
 * @file asymptotics.hpp
 * @brief Growth classification from the characteristic root, plus an
 *        empirical log-log cross-check against evaluated values.
 *
 * With r the root of g(x) = 1:
 *   r > alpha   ->  Theta(n^r)
 *   r == alpha  ->  Theta(n^alpha log^(beta+1) n)
 *   r < alpha   ->  Theta(n^alpha log^beta n)
 */

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcrec/characteristic.hpp"
#include "dcrec/evaluator.hpp"

namespace dcrec {

enum class Branch { RootDominates, Balanced, DrivingDominates };

const char* to_string(Branch branch);

inline constexpr double kDefaultTau = 1e-9;
/// |r - alpha| below this (but above tau) marks a classification as fragile.
inline constexpr double kFragileBand = 1e-4;

struct AsymptoticClass {
    Branch branch = Branch::Balanced;
    double r = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::string theta;
    double margin = 0.0;  ///< |r - alpha|
    bool fragile = false;
    /// Theta(1): r < alpha = beta = 0.
    bool constant_growth = false;
    /// Branch decided by exact rational arithmetic on g(alpha).
    bool exact = false;

    std::vector<std::string> warnings() const;
};

/// Branch by comparing r with alpha under tolerance tau.
AsymptoticClass classify(double r, double alpha, double beta, double tau = kDefaultTau);

/// As above, but when alpha is an integer and every a_i, b_i is an exact
/// rational the branch is decided exactly from the sign of g(alpha) - 1.
AsymptoticClass classify(const RecurrenceSpec& spec, const RootResult& root,
                         double tau = kDefaultTau);

/// Sign of g(alpha) - 1 in exact arithmetic, when it can be computed.
std::optional<int> exact_balance_sign(const RecurrenceSpec& spec);

/// Theta text for a branch; r printed with 10 decimals.
std::string render_theta(Branch branch, double r, double alpha, double beta);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double std_error = 0.0;  ///< standard error of the slope
    std::size_t points = 0;
};

/// Ordinary least squares of log2 T against log2 n. Errors: TooFewSamples
/// (fewer than 3 or fewer than 3 distinct n), NonPositiveValue (T <= 0 or n < 2).
FitResult estimate_exponent(std::span<const Sample> samples);

/// log2(T(2n) / T(n)). Requires n >= n0 and 2n within the table.
double ratio_exponent(const EvalTable& table, std::int64_t n);
/// Same on a plain value sequence where values[i] holds T(i + 1).
double ratio_exponent(std::span<const double> values, std::int64_t n);
double ratio_exponent(const RecurrenceSpec& spec, std::int64_t n, const EvalOptions& options = {});

enum class Verdict { Consistent, Inconsistent };

const char* to_string(Verdict verdict);

inline constexpr double kFitTolerance = 0.1;
inline constexpr double kBalancedFitTolerance = 0.15;

struct Comparison {
    Branch branch;
    double predicted = 0.0;  ///< r for RootDominates, alpha otherwise
    double slope = 0.0;
    double gap = 0.0;
    double threshold = 0.0;
    Verdict verdict = Verdict::Inconsistent;
};

Comparison compare(const AsymptoticClass& predicted, const FitResult& fit);

}  // namespace dcrec
