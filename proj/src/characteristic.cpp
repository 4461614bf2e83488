#include "dcrec/characteristic.hpp"

#include <cmath>

namespace dcrec {

namespace {

constexpr double kBracketLimit = 1024.0;
constexpr double kPolishWidth = 1e-6;
constexpr int kMaxIterations = 4000;

// Moves lo/hi outwards one ulp at a time until they bracket the root.
void widen_to_bracket(const CharacteristicFunction& g, double& lo, double& hi) {
    while (g(lo) < 1.0) lo = std::nextafter(lo, -INFINITY);
    while (g(hi) > 1.0) hi = std::nextafter(hi, INFINITY);
}

}  // namespace

CharacteristicFunction::CharacteristicFunction(const RecurrenceSpec& spec) {
    coeff_.reserve(spec.k());
    log_ratio_.reserve(spec.k());
    for (const RecTerm& t : spec.terms()) {
        coeff_.push_back(t.a.value());
        log_ratio_.push_back(std::log(t.b.value()));
    }
}

double CharacteristicFunction::operator()(double x) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < coeff_.size(); ++i) sum += coeff_[i] * std::exp(x * log_ratio_[i]);
    return sum;
}

double CharacteristicFunction::derivative(double x) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < coeff_.size(); ++i)
        sum += coeff_[i] * std::exp(x * log_ratio_[i]) * log_ratio_[i];
    return sum;
}

double g(const RecurrenceSpec& spec, double x) {
    return CharacteristicFunction(spec)(x);
}

double g_prime(const RecurrenceSpec& spec, double x) {
    return CharacteristicFunction(spec).derivative(x);
}

const char* to_string(RootMethod method) {
    return method == RootMethod::ClosedForm ? "ClosedForm" : "Bisection";
}

RootResult solve_root(const RecurrenceSpec& spec, const RootOptions& options) {
    const CharacteristicFunction g(spec);
    const double tol = options.tol;
    RootResult out;

    if (spec.k() == 1 && !options.force_bisection) {
        const RecTerm& t = spec.terms().front();
        out.method = RootMethod::ClosedForm;
        out.r = std::log(t.a.value()) / std::log(1.0 / t.b.value());
        out.residual = std::abs(g(out.r) - 1.0);
        out.lo = out.hi = out.r;
        widen_to_bracket(g, out.lo, out.hi);
        return out;
    }

    out.method = RootMethod::Bisection;
    double lo = 0.0, hi = 1.0;
    double step = 1.0;
    while (g(lo) < 1.0) {
        hi = lo;
        lo -= step;
        step *= 2.0;
        if (lo < -kBracketLimit)
            throw Error(ErrorCode::BracketOverflow, "no bracket for g(x) = 1 within |x| <= 1024");
    }
    step = 1.0;
    while (g(hi) > 1.0) {
        lo = hi;
        hi += step;
        step *= 2.0;
        if (hi > kBracketLimit)
            throw Error(ErrorCode::BracketOverflow, "no bracket for g(x) = 1 within |x| <= 1024");
    }

    double x = 0.5 * (lo + hi);
    double gx = g(x);
    int iterations = 0;
    while (iterations < kMaxIterations) {
        ++iterations;
        if (gx >= 1.0) lo = x; else hi = x;
        if (std::abs(gx - 1.0) <= tol || hi - lo <= tol / 10.0) break;

        double next = 0.5 * (lo + hi);
        if (options.newton_polish && hi - lo <= kPolishWidth) {
            double newton = x - (gx - 1.0) / g.derivative(x);
            if (newton > lo && newton < hi) next = newton;
        }
        if (next <= lo || next >= hi) break;  // bracket is down to adjacent doubles
        x = next;
        gx = g(x);
    }

    out.r = x;
    out.residual = std::abs(gx - 1.0);
    out.lo = lo;
    out.hi = hi;
    out.iterations = iterations;
    return out;
}

}  // namespace dcrec
