#include "dcrec/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dcrec/kernels.hpp"

namespace dcrec {

namespace {

std::vector<double> powers(std::int64_t N, double exponent, double scale) {
    std::vector<double> out(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n)
        out[static_cast<std::size_t>(n - 1)] = scale * std::pow(static_cast<double>(n), exponent);
    return out;
}

// Records the first index where lhs[i] > scale * rhs[i]; index i maps to n = first_n + i.
void sweep(CheckResult& check, std::span<const double> lhs, std::span<const double> rhs,
           double scale, std::int64_t first_n) {
    if (lhs.empty()) return;
    std::size_t bad = kernels::first_exceeding(lhs, rhs, scale);
    if (bad < lhs.size()) {
        check.ok = false;
        check.witness = Witness{first_n + static_cast<std::int64_t>(bad), lhs[bad], scale * rhs[bad]};
    }
}

}  // namespace

std::int64_t Certificate::m0_ceil() const {
    return static_cast<std::int64_t>(std::ceil(m0));
}

const char* to_string(NotApplicableReason reason) {
    switch (reason) {
        case NotApplicableReason::BetaNonzero: return "BetaNonzero";
        case NotApplicableReason::RootNotDominant: return "RootNotDominant";
        case NotApplicableReason::RootNotInteger: return "RootNotInteger";
    }
    return "?";
}

NotApplicable::NotApplicable(NotApplicableReason reason, const std::string& detail)
    : Error(ErrorCode::NotApplicable, std::string(to_string(reason)) + ": " + detail),
      reason_(reason) {}

Certificate construct(const RecurrenceSpec& spec, const RootResult& root, double f2,
                      const EvalOptions& options) {
    if (spec.beta() != 0.0)
        throw NotApplicable(NotApplicableReason::BetaNonzero, "the driving term has a log factor");
    const CharacteristicFunction g(spec);
    const double g_alpha = g(spec.alpha());
    if (!(g_alpha > 1.0))
        throw NotApplicable(NotApplicableReason::RootNotDominant,
                            "r does not exceed alpha (g(alpha) <= 1)");
    const double r = std::round(root.r);
    if (std::abs(root.r - r) > kIntegerRootTolerance || r < 1.0)
        throw NotApplicable(NotApplicableReason::RootNotInteger, "r is not a positive integer");
    if (!(f2 > 0.0)) throw Error(ErrorCode::Precondition, "f2 must be positive");

    Certificate cert;
    cert.r = r;
    cert.alpha = spec.alpha();
    cert.b_min = spec.b_min().value();
    cert.g_alpha = g_alpha;
    cert.g_half_below = g(r - 0.5);
    cert.f2 = f2;
    cert.f3 = spec.c() / (g_alpha - 1.0);
    cert.f1 = cert.f2 + cert.f3 + 1.0;
    // S(1) = f1 - f2 - f3 must not round below 1; any larger f1 keeps the
    // induction valid since m0 is derived from it.
    while (cert.f1 - cert.f2 - cert.f3 < 1.0) cert.f1 = std::nextafter(cert.f1, INFINITY);
    const double root_term =
        cert.f1 * std::pow(2.0, r) * (1.0 / cert.b_min) / (cert.f2 * (cert.g_half_below - 1.0));
    cert.m0 = std::max({static_cast<double>(spec.n0()), 1.0 / cert.b_min, root_term * root_term});

    cert.M = 1.0;
    const std::int64_t below = cert.m0_ceil() - 1;
    if (below >= 1) {
        EvalTable table = eval_upto(spec, below, options);
        for (double v : table.values()) cert.M = std::max(cert.M, v);
    }
    return cert;
}

double S_value(const Certificate& cert, std::int64_t n) {
    const double x = static_cast<double>(n);
    return cert.f1 * std::pow(x, cert.r) - cert.f2 * std::pow(x, cert.r - 0.5) -
           cert.f3 * std::pow(x, cert.alpha);
}

bool VerificationReport::passed() const {
    return base.ok && induction.ok && closing1.ok && closing2.ok && t_le_mr.ok && lower_bound.ok;
}

std::optional<VerificationReport::Failure> VerificationReport::first_failure() const {
    const std::pair<std::string_view, const CheckResult*> checks[] = {
        {"base", &base},         {"induction", &induction}, {"closing1", &closing1},
        {"closing2", &closing2}, {"t_le_mr", &t_le_mr},     {"lower_bound", &lower_bound},
    };
    for (const auto& [name, check] : checks)
        if (!check->ok) return Failure{name, check->witness.value_or(Witness{})};
    return std::nullopt;
}

VerificationReport verify(const Certificate& cert, const RecurrenceSpec& spec, std::int64_t N,
                          const EvalOptions& options) {
    const std::int64_t m0c = cert.m0_ceil();
    if (N < m0c)
        throw Error(ErrorCode::Precondition, "verification horizon " + std::to_string(N) +
                                                 " is below ceil(m0) = " + std::to_string(m0c));
    VerificationReport report;
    report.N = N;

    const EvalTable R = eval_R_upto(cert, spec, N, options);
    const EvalTable T = eval_upto(spec, N, options);
    std::vector<double> S(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) S[static_cast<std::size_t>(n - 1)] = S_value(cert, n);

    const auto below = static_cast<std::size_t>(m0c - 1);
    std::span<const double> r_all = R.values(), s_all(S);
    sweep(report.base, r_all.first(below), s_all.first(below), 1.0, 1);
    sweep(report.induction, r_all.subspan(below), s_all.subspan(below), 1.0, m0c);

    const CharacteristicFunction g(spec);
    const double rhs1 = cert.f3 * (g(spec.alpha()) - 1.0);
    if (std::abs(spec.c() - rhs1) > kClosingIdentityTolerance * std::max(1.0, spec.c())) {
        report.closing1.ok = false;
        report.closing1.witness = Witness{0, spec.c(), rhs1};
    }

    // The right side grows faster by n^(1/2), so holding at ceil(m0) implies
    // it for every larger n; the sweep confirms it across the horizon anyway.
    const double g_half = g(cert.r - 0.5);
    for (std::int64_t n = m0c; n <= N; ++n) {
        const double x = static_cast<double>(n);
        const double lhs = cert.f1 * std::pow(2.0, cert.r) * std::pow(x, cert.r - 1.0) / cert.b_min;
        const double rhs = (g_half - 1.0) * cert.f2 * std::pow(x, cert.r - 0.5);
        if (lhs > rhs) {
            report.closing2.ok = false;
            report.closing2.witness = Witness{n, lhs, rhs};
            break;
        }
    }

    sweep(report.t_le_mr, T.values(), R.values(), cert.M, 1);

    if (spec.n0() <= N) {
        const auto from = static_cast<std::size_t>(spec.n0() - 1);
        std::vector<double> floor_values = powers(N, spec.alpha(), spec.c());
        sweep(report.lower_bound, std::span<const double>(floor_values).subspan(from),
              T.values().subspan(from), 1.0, spec.n0());
    }
    return report;
}

bool binomial_step_holds(const Certificate& cert, std::int64_t n) {
    const double x = static_cast<double>(n);
    const double lhs = std::pow(x + 1.0 / cert.b_min, cert.r);
    const double rhs = std::pow(x, cert.r) + std::pow(2.0, cert.r) * std::pow(x, cert.r - 1.0) / cert.b_min;
    return lhs <= rhs;
}

double max_growth_ratio(const EvalTable& table, double r) {
    std::vector<double> denom = powers(table.limit(), r, 1.0);
    return kernels::max_ratio(table.values(), denom);
}

}  // namespace dcrec
