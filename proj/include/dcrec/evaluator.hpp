#pragma once

/**
 * @file evaluator.hpp
 * @brief Exact evaluation of the recurrence on 1..N.
 *
 * The bottom-up pass walks n in wavefronts: for a block [n, m] where
 * ceil(b_max * m) <= n - 1, every dependency is already filled, so the block
 * is evaluated with the data-parallel combine kernel. Summation order is
 * fixed (terms in ascending b, driving term last), which makes the table,
 * the memoized top-down oracle and every SIMD backend agree bit for bit.
 */

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "dcrec/model.hpp"

namespace dcrec {

struct Certificate;

inline constexpr std::int64_t kDefaultEvalLimit = 10'000'000;

struct EvalOptions {
    std::int64_t limit = kDefaultEvalLimit;
};

/// Values of a recurrence for 1 <= n <= N. Immutable once built.
class EvalTable {
public:
    const RecurrenceSpec& spec() const noexcept { return spec_; }
    std::int64_t limit() const noexcept { return static_cast<std::int64_t>(values_.size()) - 1; }
    /// First n computed from the recursive case (n0 for T, ceil(m0) for R).
    std::int64_t threshold() const noexcept { return threshold_; }
    double base_value() const noexcept { return base_; }
    /// Whether the driving term carries the log2(n)^beta factor.
    bool with_log() const noexcept { return with_log_; }

    double operator[](std::int64_t n) const { return values_[static_cast<std::size_t>(n)]; }
    /// Bounds-checked access; throws std::out_of_range.
    double at(std::int64_t n) const;
    /// Entries for n = 1..N; element i holds the value at n = i + 1.
    std::span<const double> values() const noexcept {
        return std::span<const double>(values_).subspan(1);
    }

private:
    friend EvalTable build_table(const RecurrenceSpec&, std::int64_t, std::int64_t, double, bool,
                                 const EvalOptions&);

    EvalTable(RecurrenceSpec spec, std::int64_t threshold, double base, bool with_log)
        : spec_(std::move(spec)), threshold_(threshold), base_(base), with_log_(with_log) {}

    RecurrenceSpec spec_;
    std::int64_t threshold_;
    double base_;
    bool with_log_;
    std::vector<double> values_;  // values_[0] unused
};

/// c * n^alpha * log2(n)^beta, with the factors for alpha = 0 or beta = 0
/// skipped. The one definition shared by every evaluation path.
double driving_value(const RecurrenceSpec& spec, std::int64_t n, bool with_log = true);

/// T(1..N). Errors: LimitExceeded (N above options.limit), Overflow (first
/// non-finite value; the message names n), Precondition (N < 1).
EvalTable eval_upto(const RecurrenceSpec& spec, std::int64_t N, const EvalOptions& options = {});

struct MemoOptions {
    std::int64_t max_depth = 1'000'000;
};

/// Top-down memoized T(n); the independent oracle for eval_upto. The cache
/// persists across calls, so sweeping many n costs one traversal.
class MemoEvaluator {
public:
    explicit MemoEvaluator(RecurrenceSpec spec, MemoOptions options = {});

    /// Errors: Precondition (n < 1), RecursionDepthExceeded.
    double operator()(std::int64_t n);

    std::size_t cached() const noexcept { return memo_.size(); }

private:
    double visit(std::int64_t n, std::int64_t depth);

    RecurrenceSpec spec_;
    MemoOptions options_;
    std::vector<double> coeff_;
    std::vector<CeilIndex> index_;
    std::unordered_map<std::int64_t, double> memo_;
};

/// One-shot MemoEvaluator query.
double eval_memo(const RecurrenceSpec& spec, std::int64_t n, const MemoOptions& options = {});

/// The auxiliary recurrence R(n) = 1 for n < m0, c*n^alpha + sum a_i R(ceil(b_i n))
/// otherwise. Requires N >= ceil(m0).
EvalTable eval_R_upto(const Certificate& cert, const RecurrenceSpec& spec, std::int64_t N,
                      const EvalOptions& options = {});

/// Max relative difference between each stored value for n >= threshold and
/// the recurrence re-applied to the stored values.
double reconstruction_residual(const EvalTable& table);

struct Sample {
    std::int64_t n;
    double value;
};

/// Geometric grid from n_min to n_max, rounded to integers and deduplicated.
std::vector<std::int64_t> geometric_grid(std::int64_t n_min, std::int64_t n_max, int points);

/// Requires table.spec().n0() <= n_min < n_max <= table.limit() and points >= 3.
std::vector<Sample> sample_geometric(const EvalTable& table, std::int64_t n_min,
                                     std::int64_t n_max, int points);
std::vector<Sample> sample_geometric(const RecurrenceSpec& spec, std::int64_t n_min,
                                     std::int64_t n_max, int points,
                                     const EvalOptions& options = {});

/// CSV with header "n,T" and values printed to 17 significant digits.
void write_csv(const EvalTable& table, std::ostream& os);
void write_csv(const EvalTable& table, std::span<const std::int64_t> ns, std::ostream& os);

}  // namespace dcrec
