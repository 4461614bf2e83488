#pragma once

/**
 * @file characteristic.hpp
 * @brief The characteristic function g(x) = sum_i a_i * b_i^x and its root.
 *
 * Every b_i lies in (0, 1), so g is continuous and strictly decreasing with
 * g(-inf) = inf and g(inf) = 0; g(x) = 1 has exactly one real root r.
 */

#include <vector>

#include "dcrec/model.hpp"

namespace dcrec {

/// g and g' with ln(b_i) cached per term. Terms are visited in canonical
/// (ascending b) order so repeated evaluations are bitwise reproducible.
class CharacteristicFunction {
public:
    explicit CharacteristicFunction(const RecurrenceSpec& spec);

    double operator()(double x) const;
    double derivative(double x) const;

private:
    std::vector<double> coeff_;
    std::vector<double> log_ratio_;
};

double g(const RecurrenceSpec& spec, double x);
double g_prime(const RecurrenceSpec& spec, double x);

enum class RootMethod { ClosedForm, Bisection };

const char* to_string(RootMethod method);

struct RootResult {
    double r = 0.0;
    double residual = 0.0;  ///< |g(r) - 1|
    double lo = 0.0;        ///< g(lo) >= 1
    double hi = 0.0;        ///< g(hi) <= 1
    int iterations = 0;
    RootMethod method = RootMethod::Bisection;
};

struct RootOptions {
    double tol = 1e-12;
    /// Skip the k = 1 closed form (used to cross-check it).
    bool force_bisection = false;
    /// Newton steps from g' once the bracket is narrower than 1e-6.
    bool newton_polish = true;
};

/// Solves g(x) = 1. k = 1 uses r = ln(a)/ln(1/b); otherwise the root is
/// bracketed starting from [0, 1] and bisected. Throws
/// Error(BracketOverflow) if no bracket exists within |x| <= 1024.
RootResult solve_root(const RecurrenceSpec& spec, const RootOptions& options = {});

}  // namespace dcrec
