#include "dcrec/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "dcrec/certificate.hpp"
#include "dcrec/kernels.hpp"

namespace dcrec {

namespace {

constexpr std::size_t kTile = 2048;

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct TermPlan {
    std::vector<double> coeff;
    std::vector<CeilIndex> index;

    explicit TermPlan(const RecurrenceSpec& spec) {
        for (const RecTerm& t : spec.terms()) {
            coeff.push_back(t.a.value());
            index.emplace_back(t.b);
        }
    }
};

}  // namespace

double EvalTable::at(std::int64_t n) const {
    if (n < 1 || n > limit())
        throw std::out_of_range("n = " + std::to_string(n) + " outside 1.." + std::to_string(limit()));
    return (*this)[n];
}

double driving_value(const RecurrenceSpec& spec, std::int64_t n, bool with_log) {
    const double x = static_cast<double>(n);
    double v = spec.c();
    if (spec.alpha() != 0.0) v = v * std::pow(x, spec.alpha());
    if (with_log && spec.beta() != 0.0) v = v * std::pow(std::log2(x), spec.beta());
    return v;
}

EvalTable build_table(const RecurrenceSpec& spec, std::int64_t N, std::int64_t threshold,
                      double base, bool with_log, const EvalOptions& options) {
    if (N < 1) throw Error(ErrorCode::Precondition, "evaluation range must be at least 1");
    if (N > options.limit)
        throw Error(ErrorCode::LimitExceeded, "N = " + std::to_string(N) +
                                                  " exceeds the evaluation limit " +
                                                  std::to_string(options.limit));

    EvalTable table(spec, threshold, base, with_log);
    std::vector<double>& values = table.values_;
    values.assign(static_cast<std::size_t>(N) + 1, 0.0);
    values[0] = std::numeric_limits<double>::quiet_NaN();
    std::fill(values.begin() + 1, values.begin() + 1 + std::min(threshold - 1, N), base);

    const TermPlan plan(spec);
    const std::size_t k = plan.coeff.size();
    const CeilIndex& widest = plan.index.back();
    std::vector<std::int64_t> idx(k * kTile);
    std::vector<double> drive(kTile);

    std::int64_t n = threshold;
    while (n <= N) {
        const std::int64_t end = std::min(N, widest.max_preimage(n - 1));
        for (std::int64_t s = n; s <= end; s += static_cast<std::int64_t>(kTile)) {
            const auto len = static_cast<std::size_t>(std::min<std::int64_t>(kTile, end - s + 1));
            for (std::size_t t = 0; t < k; ++t)
                for (std::size_t j = 0; j < len; ++j)
                    idx[t * len + j] = plan.index[t](s + static_cast<std::int64_t>(j));
            for (std::size_t j = 0; j < len; ++j)
                drive[j] = driving_value(spec, s + static_cast<std::int64_t>(j), with_log);

            std::span<double> out(values.data() + s, len);
            kernels::combine({values.data(), plan.coeff, std::span(idx.data(), k * len),
                              std::span(drive.data(), len), out});
            if (std::size_t bad = kernels::first_nonfinite(out); bad < len)
                throw Error(ErrorCode::Overflow,
                            "value overflows double at n = " +
                                std::to_string(s + static_cast<std::int64_t>(bad)));
        }
        n = end + 1;
    }
    return table;
}

EvalTable eval_upto(const RecurrenceSpec& spec, std::int64_t N, const EvalOptions& options) {
    return build_table(spec, N, spec.n0(), spec.d().value(), true, options);
}

MemoEvaluator::MemoEvaluator(RecurrenceSpec spec, MemoOptions options)
    : spec_(std::move(spec)), options_(options) {
    for (const RecTerm& t : spec_.terms()) {
        coeff_.push_back(t.a.value());
        index_.emplace_back(t.b);
    }
}

double MemoEvaluator::operator()(std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::Precondition, "n must be at least 1");
    return visit(n, 0);
}

double MemoEvaluator::visit(std::int64_t n, std::int64_t depth) {
    if (n < spec_.n0()) return spec_.d().value();
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    if (depth > options_.max_depth)
        throw Error(ErrorCode::RecursionDepthExceeded,
                    "recursion deeper than " + std::to_string(options_.max_depth));
    double acc = coeff_[0] * visit(index_[0](n), depth + 1);
    for (std::size_t t = 1; t < coeff_.size(); ++t) acc = acc + coeff_[t] * visit(index_[t](n), depth + 1);
    acc = acc + driving_value(spec_, n);
    memo_.emplace(n, acc);
    return acc;
}

double eval_memo(const RecurrenceSpec& spec, std::int64_t n, const MemoOptions& options) {
    return MemoEvaluator(spec, options)(n);
}

EvalTable eval_R_upto(const Certificate& cert, const RecurrenceSpec& spec, std::int64_t N,
                      const EvalOptions& options) {
    const auto threshold = static_cast<std::int64_t>(std::ceil(cert.m0));
    if (threshold < auto_n0(spec.terms()))
        throw Error(ErrorCode::Precondition, "m0 is below the admissible threshold of the spec");
    if (N < threshold)
        throw Error(ErrorCode::Precondition, "N = " + std::to_string(N) + " is below ceil(m0) = " +
                                                 std::to_string(threshold));
    return build_table(spec, N, threshold, 1.0, false, options);
}

double reconstruction_residual(const EvalTable& table) {
    const RecurrenceSpec& spec = table.spec();
    const TermPlan plan(spec);
    const std::size_t k = plan.coeff.size();
    const std::int64_t N = table.limit();
    std::vector<std::int64_t> idx(k * kTile);
    std::vector<double> drive(kTile), recomputed(kTile);
    const double* values = table.values().data() - 1;  // values[n] is T(n)

    double worst = 0.0;
    for (std::int64_t s = table.threshold(); s <= N; s += static_cast<std::int64_t>(kTile)) {
        const auto len = static_cast<std::size_t>(std::min<std::int64_t>(kTile, N - s + 1));
        for (std::size_t t = 0; t < k; ++t)
            for (std::size_t j = 0; j < len; ++j)
                idx[t * len + j] = plan.index[t](s + static_cast<std::int64_t>(j));
        for (std::size_t j = 0; j < len; ++j)
            drive[j] = driving_value(spec, s + static_cast<std::int64_t>(j), table.with_log());
        std::span<double> out(recomputed.data(), len);
        kernels::combine({values, plan.coeff, std::span(idx.data(), k * len),
                          std::span(drive.data(), len), out});
        worst = std::max(worst, kernels::max_rel_residual(out, std::span(values + s, len)));
    }
    return worst;
}

std::vector<std::int64_t> geometric_grid(std::int64_t n_min, std::int64_t n_max, int points) {
    std::vector<std::int64_t> grid;
    const double ratio = static_cast<double>(n_max) / static_cast<double>(n_min);
    for (int i = 0; i < points; ++i) {
        std::int64_t n;
        if (i == 0) n = n_min;
        else if (i == points - 1) n = n_max;
        else n = std::llround(static_cast<double>(n_min) * std::pow(ratio, double(i) / (points - 1)));
        n = std::clamp(n, n_min, n_max);
        if (grid.empty() || grid.back() != n) grid.push_back(n);
    }
    return grid;
}

std::vector<Sample> sample_geometric(const EvalTable& table, std::int64_t n_min,
                                     std::int64_t n_max, int points) {
    if (points < 3) throw Error(ErrorCode::Precondition, "need at least 3 sample points");
    if (n_min < table.spec().n0())
        throw Error(ErrorCode::Precondition, "n_min must be at least n0");
    if (n_min >= n_max) throw Error(ErrorCode::Precondition, "n_min must be below n_max");
    if (n_max > table.limit())
        throw Error(ErrorCode::Precondition, "n_max beyond the evaluated range");
    std::vector<Sample> samples;
    for (std::int64_t n : geometric_grid(n_min, n_max, points)) samples.push_back({n, table[n]});
    return samples;
}

std::vector<Sample> sample_geometric(const RecurrenceSpec& spec, std::int64_t n_min,
                                     std::int64_t n_max, int points, const EvalOptions& options) {
    if (n_max < 1) throw Error(ErrorCode::Precondition, "n_max must be positive");
    return sample_geometric(eval_upto(spec, n_max, options), n_min, n_max, points);
}

void write_csv(const EvalTable& table, std::ostream& os) {
    os << "n,T\n";
    for (std::int64_t n = 1; n <= table.limit(); ++n) os << n << ',' << format17(table[n]) << '\n';
}

void write_csv(const EvalTable& table, std::span<const std::int64_t> ns, std::ostream& os) {
    os << "n,T\n";
    for (std::int64_t n : ns) os << n << ',' << format17(table.at(n)) << '\n';
}

}  // namespace dcrec
