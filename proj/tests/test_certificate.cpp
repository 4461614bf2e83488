#include <doctest.h>

#include <cmath>
#include <string>

#include "dcrec/certificate.hpp"
#include "dcrec/error.hpp"
#include "test_util.hpp"

using namespace dcrec;
using dcrec::testing::spec_of;

namespace {

Certificate cert_of(const RecurrenceSpec& s, double f2 = 1.0) { return construct(s, solve_root(s), f2); }

NotApplicableReason reason_of(const std::string& text) {
    RecurrenceSpec s = spec_of(text);
    try {
        cert_of(s);
    } catch (const NotApplicable& e) {
        CHECK(e.code() == ErrorCode::NotApplicable);
        return e.reason();
    }
    FAIL("expected NotApplicable for " << text);
    throw;
}

// beta = 0 specs whose characteristic root is a positive integer above alpha.
const char* const kIntegerRootSuite[] = {
    "T(n)=2*T(ceil(0.5*n))+1",
    "T(n)=4*T(ceil(0.5*n))+1",
    "T(n)=4*T(ceil(0.5*n))+n",
    "T(n)=8*T(ceil(0.5*n))+n^2",
    "T(n)=9*T(ceil(1/3*n))+n",
    "T(n)=T(ceil(0.5*n))+2*T(ceil(0.25*n))+1",
    "T(n)=2*T(ceil(0.5*n))+8*T(ceil(0.25*n))+n",
    "T(n)=2*T(ceil(0.5*n))+4*T(ceil(0.25*n))+16*T(ceil(0.125*n))+n",
    "T(n)=3*T(ceil(1/3*n))+n^0.5 ; n0=5 ; d=2",
};

}  // namespace

TEST_CASE("certificate constants for 2T(n/2) + 1") {
    RecurrenceSpec s = spec_of("T(n)=2*T(ceil(0.5*n))+1; n0=2; d=1");
    Certificate c = cert_of(s);
    CHECK(c.r == 1);
    CHECK(c.f3 == 1);
    CHECK(c.f2 == 1);
    CHECK(c.f1 == 3);
    CHECK(c.b_min == 0.5);
    CHECK(c.g_alpha == 2);
    CHECK(c.g_half_below == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    // (12 / (sqrt 2 - 1))^2 = 144 (3 + 2 sqrt 2), evaluated to 20 digits outside the library.
    CHECK(std::abs(c.m0 - 839.2935059634513740) <= 1e-9);
    CHECK(c.m0_ceil() == 840);
    // T(2^k + 1) = 2^(k+2) - 1, so the largest value below 840 is T(513) = 2047.
    double best = 1;
    for (std::int64_t n = 1; n < 840; ++n) best = std::max(best, eval_memo(s, n));
    CHECK(c.M == best);
    CHECK(c.M == 2047);
}

TEST_CASE("certificate invariants across the suite") {
    for (const char* text : kIntegerRootSuite) {
        CAPTURE(text);
        RecurrenceSpec s = spec_of(text);
        Certificate c = cert_of(s);
        CHECK(c.r == std::round(c.r));
        CHECK(c.r > s.alpha());
        CHECK(c.f3 == doctest::Approx(s.c() / (g(s, s.alpha()) - 1)).epsilon(1e-15));
        CHECK(c.f1 - c.f2 - c.f3 >= 1);
        CHECK(c.f1 == doctest::Approx(c.f2 + c.f3 + 1).epsilon(1e-15));
        CHECK(c.m0 >= s.n0());
        CHECK(c.m0 >= 1 / s.b_min().value());
        const double third = std::pow(c.f1 * std::pow(2, c.r) / c.b_min / (c.f2 * (g(s, c.r - 0.5) - 1)), 2);
        CHECK(c.m0 >= third * (1 - 1e-15));
        CHECK(c.M >= 1);
    }
}

TEST_CASE("NotApplicable reasons") {
    CHECK(reason_of("T(n)=2*T(ceil(0.5*n))+n") == NotApplicableReason::RootNotDominant);
    CHECK(reason_of("T(n)=2*T(ceil(0.5*n))+n*log(n)") == NotApplicableReason::BetaNonzero);
    CHECK(reason_of("T(n)=3*T(ceil(0.5*n))+1") == NotApplicableReason::RootNotInteger);
    CHECK(reason_of("T(n)=T(ceil(0.2*n))+T(ceil(0.7*n))+n") == NotApplicableReason::RootNotDominant);
    CHECK(reason_of("T(n)=T(ceil(0.5*n))+1") == NotApplicableReason::RootNotDominant);
    CHECK(reason_of("T(n)=1/2*T(ceil(0.5*n))+1") == NotApplicableReason::RootNotDominant);
    CHECK(std::string(to_string(NotApplicableReason::BetaNonzero)) == "BetaNonzero");
}

TEST_CASE("S values") {
    Certificate c = cert_of(spec_of("T(n)=2*T(ceil(0.5*n))+1"));
    CHECK(S_value(c, 1) == 1);
    CHECK(S_value(c, 4) == 9);
    for (const char* text : kIntegerRootSuite) {
        Certificate k = cert_of(spec_of(text));
        for (std::int64_t n = 1; n <= 5000; n += 7) CHECK(S_value(k, n) >= std::pow(n, k.r) * (1 - 1e-12));
    }
}

TEST_CASE("verify passes up to 1e5") {
    RecurrenceSpec s = spec_of("T(n)=2*T(ceil(0.5*n))+1");
    VerificationReport rep = verify(cert_of(s), s, 100'000);
    CHECK(rep.N == 100'000);
    CHECK(rep.base.ok);
    CHECK(rep.induction.ok);
    CHECK(rep.closing1.ok);
    CHECK(rep.closing2.ok);
    CHECK(rep.t_le_mr.ok);
    CHECK(rep.lower_bound.ok);
    CHECK(rep.passed());
    CHECK_FALSE(rep.first_failure().has_value());
    CHECK_THROWS_AS(verify(cert_of(s), s, 839), Error);
}

TEST_CASE("tampered certificates fail the documented checks") {
    RecurrenceSpec s = spec_of("T(n)=2*T(ceil(0.5*n))+1");
    Certificate low_f1 = cert_of(s);
    low_f1.f1 = 1;
    VerificationReport a = verify(low_f1, s, 100'000);
    CHECK_FALSE(a.passed());
    CHECK_FALSE(a.base.ok);
    REQUIRE(a.base.witness);
    CHECK(a.base.witness->n == 1);
    CHECK(a.base.witness->lhs == 1);
    CHECK(a.base.witness->rhs == -1);
    REQUIRE(a.first_failure());
    CHECK(a.first_failure()->check == "base");

    Certificate low_m0 = cert_of(s);
    low_m0.m0 = 10;
    VerificationReport b = verify(low_m0, s, 100'000);
    CHECK_FALSE(b.passed());
    CHECK_FALSE(b.closing2.ok);
    REQUIRE(b.closing2.witness);
    CHECK(b.closing2.witness->n == 10);
    CHECK(b.closing2.witness->lhs == doctest::Approx(12.0));
    CHECK(b.closing2.witness->rhs == doctest::Approx((std::sqrt(2.0) - 1) * std::sqrt(10.0)));

    Certificate low_f3 = cert_of(s);
    low_f3.f3 = 0.5;
    CHECK_FALSE(verify(low_f3, s, 1000).closing1.ok);

    Certificate low_M = cert_of(s);
    low_M.M = 1;
    VerificationReport m = verify(low_M, s, 5000);
    CHECK_FALSE(m.t_le_mr.ok);
    REQUIRE(m.first_failure());
    CHECK(m.first_failure()->check == "t_le_mr");
}

TEST_CASE("property: any positive f2 yields a passing certificate") {
    for (const char* text : kIntegerRootSuite) {
        RecurrenceSpec s = spec_of(text);
        for (double f2 : {0.1, 1.0, 10.0}) {
            Certificate c = cert_of(s, f2);
            CHECK(c.f2 == f2);
            const std::int64_t N = std::max<std::int64_t>(100'000, c.m0_ceil());
            if (N > 2'000'000) continue;
            VerificationReport rep = verify(c, s, N);
            CHECK_MESSAGE(rep.passed(), text, " f2=", f2);
        }
    }
}

TEST_CASE("property: sandwich T <= M R <= M S <= M f1 n^r") {
    for (const char* text : kIntegerRootSuite) {
        CAPTURE(text);
        RecurrenceSpec s = spec_of(text);
        Certificate c = cert_of(s);
        const std::int64_t N = std::max<std::int64_t>(100'000, c.m0_ceil());
        EvalTable t = eval_upto(s, N);
        EvalTable r = eval_R_upto(c, s, N);
        bool ok = true;
        for (std::int64_t n = 1; n <= N; ++n) {
            ok = ok && t[n] <= c.M * r[n];
            ok = ok && r[n] <= S_value(c, n);
            ok = ok && S_value(c, n) <= c.f1 * std::pow(static_cast<double>(n), c.r);
        }
        CHECK(ok);
        CHECK(max_growth_ratio(t, c.r) <= c.M * c.f1);
    }
}

TEST_CASE("binomial step holds from ceil(m0) to 1e4") {
    for (const char* text : kIntegerRootSuite) {
        Certificate c = cert_of(spec_of(text));
        for (std::int64_t n = c.m0_ceil(); n <= 10'000; ++n) CHECK(binomial_step_holds(c, n));
    }
}

TEST_CASE("max_growth_ratio") {
    EvalTable t = eval_upto(spec_of("T(n)=2*T(ceil(0.5*n))+1"), 1024);
    double best = 0;
    for (std::int64_t n = 1; n <= 1024; ++n) best = std::max(best, t[n] / static_cast<double>(n));
    CHECK(max_growth_ratio(t, 1) == best);
}
