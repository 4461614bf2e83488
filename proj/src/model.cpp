#include "dcrec/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dcrec {

namespace {

using i128 = __int128;

constexpr std::int64_t kPreimageCap = std::numeric_limits<std::int64_t>::max() / 4;

bool positive_finite(const Number& x) {
    if (x.exact()) return x.exact()->num > 0;
    return std::isfinite(x.value()) && x.value() > 0.0;
}

bool nonnegative_finite(const Number& x) {
    if (x.exact()) return x.exact()->num >= 0;
    return std::isfinite(x.value()) && x.value() >= 0.0;
}

bool in_open_unit_interval(const Number& x) {
    if (x.exact()) return x.exact()->num > 0 && x.exact()->num < x.exact()->den;
    return std::isfinite(x.value()) && x.value() > 0.0 && x.value() < 1.0;
}

std::int64_t min_threshold(const Number& b) {
    if (const auto& q = b.exact()) {
        // 1/(1 - p/q) = q/(q - p)
        i128 gap = static_cast<i128>(q->den) - q->num;
        return static_cast<std::int64_t>((q->den + gap - 1) / gap);
    }
    double v = b.value();
    if (v <= 0.5) return 2;
    double gap = 1.0 - v;  // exact for v in [0.5, 1)
    double m = std::ceil(1.0 / gap);
    while (m > 2 && std::fma(m - 1, gap, -1.0) >= 0.0) m -= 1;
    while (std::fma(m, gap, -1.0) < 0.0) m += 1;
    return static_cast<std::int64_t>(m);
}

void issue(std::vector<ValidationIssue>& out, ValidationCode code, SpecField field,
           std::size_t index, std::string message) {
    out.push_back({code, field, index, std::move(message)});
}

}  // namespace

const char* to_string(ValidationCode code) {
    switch (code) {
        case ValidationCode::NonPositiveCoefficient: return "NonPositiveCoefficient";
        case ValidationCode::RatioOutOfRange: return "RatioOutOfRange";
        case ValidationCode::NegativeExponent: return "NegativeExponent";
        case ValidationCode::ThresholdTooSmall: return "ThresholdTooSmall";
        case ValidationCode::EmptyTermList: return "EmptyTermList";
    }
    return "?";
}

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Validation: return "Validation";
        case ErrorCode::LimitExceeded: return "LimitExceeded";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::RecursionDepthExceeded: return "RecursionDepthExceeded";
        case ErrorCode::BracketOverflow: return "BracketOverflow";
        case ErrorCode::TooFewSamples: return "TooFewSamples";
        case ErrorCode::NonPositiveValue: return "NonPositiveValue";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::Precondition: return "Precondition";
    }
    return "?";
}

RawSpec RecurrenceSpec::raw() const {
    return RawSpec{driving_, terms_, n0_, d_};
}

ValidationResult validate(const RawSpec& raw) {
    std::vector<ValidationIssue> issues;
    const DrivingTerm& drv = raw.driving;

    if (!positive_finite(drv.c))
        issue(issues, ValidationCode::NonPositiveCoefficient, SpecField::C, 0,
              "c must be positive, got " + drv.c.to_string());
    if (!nonnegative_finite(drv.alpha))
        issue(issues, ValidationCode::NegativeExponent, SpecField::Alpha, 0,
              "alpha must be >= 0, got " + drv.alpha.to_string());
    if (!nonnegative_finite(drv.beta))
        issue(issues, ValidationCode::NegativeExponent, SpecField::Beta, 0,
              "beta must be >= 0, got " + drv.beta.to_string());
    if (!positive_finite(raw.d))
        issue(issues, ValidationCode::NonPositiveCoefficient, SpecField::D, 0,
              "d must be positive, got " + raw.d.to_string());

    bool terms_ok = !raw.terms.empty();
    if (raw.terms.empty())
        issue(issues, ValidationCode::EmptyTermList, SpecField::Terms, 0,
              "at least one recursive term is required");
    for (std::size_t i = 0; i < raw.terms.size(); ++i) {
        const RecTerm& t = raw.terms[i];
        if (!positive_finite(t.a)) {
            terms_ok = false;
            issue(issues, ValidationCode::NonPositiveCoefficient, SpecField::TermA, i,
                  "term " + std::to_string(i + 1) + ": a must be positive, got " + t.a.to_string());
        }
        if (!in_open_unit_interval(t.b)) {
            terms_ok = false;
            issue(issues, ValidationCode::RatioOutOfRange, SpecField::TermB, i,
                  "term " + std::to_string(i + 1) + ": b must lie in (0, 1), got " +
                      t.b.to_string());
        }
    }

    std::int64_t n0 = 2;
    if (terms_ok) {
        std::int64_t required = auto_n0(raw.terms);
        n0 = raw.n0.value_or(required);
        if (n0 < required)
            issue(issues, ValidationCode::ThresholdTooSmall, SpecField::N0, 0,
                  "n0 must be at least " + std::to_string(required) + ", got " +
                      std::to_string(n0));
    } else if (raw.n0 && *raw.n0 < 2) {
        issue(issues, ValidationCode::ThresholdTooSmall, SpecField::N0, 0,
              "n0 must be at least 2, got " + std::to_string(*raw.n0));
    }

    ValidationResult result;
    if (!issues.empty()) {
        result.issues = std::move(issues);
        return result;
    }

    std::vector<RecTerm> terms = raw.terms;
    std::stable_sort(terms.begin(), terms.end(),
                     [](const RecTerm& x, const RecTerm& y) { return number_less(x.b, y.b); });
    std::vector<RecTerm> merged;
    for (const RecTerm& t : terms) {
        if (!merged.empty() && number_same(merged.back().b, t.b))
            merged.back().a = merged.back().a + t.a;
        else
            merged.push_back(t);
    }

    RecurrenceSpec spec;
    spec.driving_ = drv;
    spec.terms_ = std::move(merged);
    spec.n0_ = n0;
    spec.d_ = raw.d;
    result.spec = std::move(spec);
    return result;
}

ValidationFailure::ValidationFailure(std::vector<ValidationIssue> issues)
    : Error(ErrorCode::Validation,
            [&] {
                std::string msg = "invalid recurrence:";
                for (const auto& i : issues) msg += std::string(" [") + to_string(i.code) + "] " + i.message + ";";
                return msg;
            }()),
      issues_(std::move(issues)) {}

RecurrenceSpec validated(const RawSpec& raw) {
    ValidationResult result = validate(raw);
    if (!result.ok()) throw ValidationFailure(std::move(result.issues));
    return std::move(*result.spec);
}

std::int64_t auto_n0(std::span<const RecTerm> terms) {
    if (terms.empty()) throw Error(ErrorCode::Validation, "EmptyTermList: no recursive terms");
    std::int64_t n0 = 2;
    for (const RecTerm& t : terms) n0 = std::max(n0, min_threshold(t.b));
    return n0;
}

CeilIndex::CeilIndex(const Number& b) : value_(b.value()) {
    if (b.exact()) {
        num_ = b.exact()->num;
        den_ = b.exact()->den;
    }
}

std::int64_t CeilIndex::operator()(std::int64_t n) const {
    if (den_ != 0) {
        i128 prod = static_cast<i128>(num_) * n;
        return static_cast<std::int64_t>((prod + den_ - 1) / den_);
    }
    // p + err is the exact product; p can only sit below it by less than
    // half an ulp, so ceil(p) is exact unless p is already integral.
    double x = static_cast<double>(n);
    double p = value_ * x;
    double err = std::fma(value_, x, -p);
    double c = std::ceil(p);
    if (c == p && err > 0.0) c += 1.0;
    return static_cast<std::int64_t>(c);
}

std::int64_t CeilIndex::max_preimage(std::int64_t bound) const {
    if (den_ != 0) {
        i128 m = static_cast<i128>(bound) * den_ / num_;
        return static_cast<std::int64_t>(std::min<i128>(m, kPreimageCap));
    }
    double est = std::floor(static_cast<double>(bound) / value_);
    std::int64_t m = est > static_cast<double>(kPreimageCap) ? kPreimageCap
                                                            : static_cast<std::int64_t>(est);
    while (m < kPreimageCap && (*this)(m + 1) <= bound) ++m;
    while (m > 0 && (*this)(m) > bound) --m;
    return m;
}

std::int64_t ceil_index(const Number& b, std::int64_t n) {
    return CeilIndex(b)(n);
}

}  // namespace dcrec
