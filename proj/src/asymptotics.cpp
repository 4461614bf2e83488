#include "dcrec/asymptotics.hpp"

#include <cmath>
#include <cstdio>

#include "dcrec/exact_eval.hpp"

namespace dcrec {

namespace {

std::string plain(double v) {
    return Number::from_double(v).to_string();
}

std::string fixed10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    return buf;
}

std::string theta_of(const std::string& n_part, double log_exponent) {
    std::string body = n_part;
    if (log_exponent != 0.0) {
        std::string log_part = "log^" + plain(log_exponent) + " n";
        body = body.empty() ? log_part : body + " · " + log_part;
    }
    return "Θ(" + (body.empty() ? std::string("1") : body) + ")";
}

}  // namespace

const char* to_string(Branch branch) {
    switch (branch) {
        case Branch::RootDominates: return "RootDominates";
        case Branch::Balanced: return "Balanced";
        case Branch::DrivingDominates: return "DrivingDominates";
    }
    return "?";
}

const char* to_string(Verdict verdict) {
    return verdict == Verdict::Consistent ? "CONSISTENT" : "INCONSISTENT";
}

std::string render_theta(Branch branch, double r, double alpha, double beta) {
    const std::string n_alpha = alpha == 0.0 ? "" : "n^" + plain(alpha);
    switch (branch) {
        case Branch::RootDominates: return "Θ(n^" + fixed10(r) + ")";
        case Branch::Balanced: return theta_of(n_alpha, beta + 1.0);
        case Branch::DrivingDominates: return theta_of(n_alpha, beta);
    }
    return {};
}

std::vector<std::string> AsymptoticClass::warnings() const {
    std::vector<std::string> out;
    if (fragile)
        out.push_back("fragile classification: |r - alpha| = " + fixed10(margin) +
                      " is within 1e-4 of a branch boundary");
    if (constant_growth)
        out.push_back("degenerate case r < alpha = beta = 0 reported as Θ(1)");
    return out;
}

AsymptoticClass classify(double r, double alpha, double beta, double tau) {
    AsymptoticClass out;
    out.r = r;
    out.alpha = alpha;
    out.beta = beta;
    out.margin = std::abs(r - alpha);
    if (r > alpha + tau) out.branch = Branch::RootDominates;
    else if (r < alpha - tau) out.branch = Branch::DrivingDominates;
    else out.branch = Branch::Balanced;
    out.fragile = out.margin > tau && out.margin < kFragileBand;
    out.constant_growth = out.branch == Branch::DrivingDominates && alpha == 0.0 && beta == 0.0;
    out.theta = render_theta(out.branch, r, alpha, beta);
    return out;
}

std::optional<int> exact_balance_sign(const RecurrenceSpec& spec) {
    const Number& alpha = spec.driving().alpha;
    if (!alpha.exact() || alpha.exact()->den != 1 || alpha.exact()->num > 4096) return std::nullopt;
    const auto power = static_cast<unsigned>(alpha.exact()->num);
    BigRational sum = 0;
    for (const RecTerm& t : spec.terms()) {
        if (!t.a.exact() || !t.b.exact()) return std::nullopt;
        BigRational b = to_big(*t.b.exact());
        BigRational b_pow(boost::multiprecision::pow(numerator(b), power),
                          boost::multiprecision::pow(denominator(b), power));
        sum += to_big(*t.a.exact()) * b_pow;
    }
    if (sum > 1) return 1;
    if (sum < 1) return -1;
    return 0;
}

AsymptoticClass classify(const RecurrenceSpec& spec, const RootResult& root, double tau) {
    AsymptoticClass out = classify(root.r, spec.alpha(), spec.beta(), tau);
    if (auto sign = exact_balance_sign(spec)) {
        // g is decreasing: g(alpha) > 1 exactly when r > alpha.
        Branch exact_branch = *sign > 0   ? Branch::RootDominates
                              : *sign < 0 ? Branch::DrivingDominates
                                          : Branch::Balanced;
        out.exact = true;
        out.fragile = false;
        if (exact_branch != out.branch) {
            out.branch = exact_branch;
            out.theta = render_theta(out.branch, out.r, out.alpha, out.beta);
        }
        out.constant_growth =
            out.branch == Branch::DrivingDominates && out.alpha == 0.0 && out.beta == 0.0;
    }
    return out;
}

FitResult estimate_exponent(std::span<const Sample> samples) {
    if (samples.size() < 3)
        throw Error(ErrorCode::TooFewSamples, "need at least 3 samples, got " +
                                                  std::to_string(samples.size()));
    double sx = 0.0, sy = 0.0;
    for (const Sample& s : samples) {
        if (s.n < 2 || !(s.value > 0.0))
            throw Error(ErrorCode::NonPositiveValue,
                        "sample at n = " + std::to_string(s.n) + " is not usable in log-log space");
        sx += std::log2(static_cast<double>(s.n));
        sy += std::log2(s.value);
    }
    const double count = static_cast<double>(samples.size());
    const double mx = sx / count, my = sy / count;
    double sxx = 0.0, sxy = 0.0;
    for (const Sample& s : samples) {
        double dx = std::log2(static_cast<double>(s.n)) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log2(s.value) - my);
    }
    if (sxx == 0.0) throw Error(ErrorCode::TooFewSamples, "samples need at least 3 distinct n");

    FitResult fit;
    fit.points = samples.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (const Sample& s : samples) {
        double e = std::log2(s.value) - (fit.intercept + fit.slope * std::log2(static_cast<double>(s.n)));
        sse += e * e;
    }
    fit.std_error = std::sqrt(sse / (count - 2.0) / sxx);
    return fit;
}

double ratio_exponent(const EvalTable& table, std::int64_t n) {
    if (n < table.spec().n0()) throw Error(ErrorCode::Precondition, "n must be at least n0");
    return ratio_exponent(table.values(), n);
}

double ratio_exponent(std::span<const double> values, std::int64_t n) {
    if (n < 1 || 2 * n > static_cast<std::int64_t>(values.size()))
        throw Error(ErrorCode::Precondition, "2n beyond the evaluated range");
    return std::log2(values[static_cast<std::size_t>(2 * n - 1)] / values[static_cast<std::size_t>(n - 1)]);
}

double ratio_exponent(const RecurrenceSpec& spec, std::int64_t n, const EvalOptions& options) {
    if (n < spec.n0()) throw Error(ErrorCode::Precondition, "n must be at least n0");
    return ratio_exponent(eval_upto(spec, 2 * n, options), n);
}

Comparison compare(const AsymptoticClass& predicted, const FitResult& fit) {
    Comparison out;
    out.branch = predicted.branch;
    out.predicted = predicted.branch == Branch::RootDominates ? predicted.r : predicted.alpha;
    out.slope = fit.slope;
    out.gap = std::abs(fit.slope - out.predicted);
    out.threshold = predicted.branch == Branch::Balanced ? kBalancedFitTolerance : kFitTolerance;
    out.verdict = out.gap <= out.threshold ? Verdict::Consistent : Verdict::Inconsistent;
    return out;
}

}  // namespace dcrec
