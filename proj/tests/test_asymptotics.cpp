#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dcrec/asymptotics.hpp"
#include "dcrec/error.hpp"
#include "test_util.hpp"

using namespace dcrec;
using dcrec::testing::spec_of;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected dcrec::Error");
    throw;
}

AsymptoticClass classify_text(const std::string& text, double tau = kDefaultTau) {
    RecurrenceSpec s = spec_of(text);
    return classify(s, solve_root(s), tau);
}

FitResult fit_powers(const std::string& text, int lo, int hi) {
    RecurrenceSpec s = spec_of(text);
    std::vector<Sample> samples;
    EvalTable t = eval_upto(s, std::int64_t{1} << hi);
    for (int e = lo; e <= hi; ++e) samples.push_back({std::int64_t{1} << e, t[std::int64_t{1} << e]});
    return estimate_exponent(samples);
}

}  // namespace

TEST_CASE("classify examples") {
    AsymptoticClass three = classify(std::log2(3.0), 1, 0);
    CHECK(three.branch == Branch::RootDominates);
    CHECK(three.theta == "Θ(n^1.5849625007)");

    AsymptoticClass merge = classify(1, 1, 0);
    CHECK(merge.branch == Branch::Balanced);
    CHECK(merge.theta == "Θ(n^1 · log^1 n)");

    AsymptoticClass sel = classify(0.8397803044678, 1, 0);
    CHECK(sel.branch == Branch::DrivingDominates);
    CHECK(sel.theta == "Θ(n^1)");
    CHECK(sel.margin == doctest::Approx(1 - 0.8397803044678));
}

TEST_CASE("classify from specs") {
    CHECK(classify_text("T(n) = 2*T(ceil(0.5*n)) + n").branch == Branch::Balanced);
    CHECK(classify_text("T(n) = 3*T(ceil(0.5*n)) + n").branch == Branch::RootDominates);
    CHECK(classify_text("T(n) = T(ceil(1/5*n)) + T(ceil(7/10*n)) + n").branch == Branch::DrivingDominates);
    AsymptoticClass mlog = classify_text("T(n) = 2*T(ceil(0.5*n)) + n*log(n)^2");
    CHECK(mlog.branch == Branch::Balanced);
    CHECK(mlog.theta == "Θ(n^1 · log^3 n)");
    CHECK(classify_text("T(n) = T(ceil(0.5*n)) + n^2*log(n)^0.5").theta == "Θ(n^2 · log^0.5 n)");
    CHECK(classify_text("T(n) = T(ceil(0.5*n)) + 1").theta == "Θ(log^1 n)");
    CHECK(classify_text("T(n) = 4*T(ceil(0.5*n)) + 1").theta == "Θ(n^2.0000000000)");
}

TEST_CASE("render_theta omits zero powers") {
    CHECK(render_theta(Branch::DrivingDominates, 0.5, 2, 0) == "Θ(n^2)");
    CHECK(render_theta(Branch::DrivingDominates, 0.5, 2, 1) == "Θ(n^2 · log^1 n)");
    CHECK(render_theta(Branch::DrivingDominates, -1, 0, 2) == "Θ(log^2 n)");
    CHECK(render_theta(Branch::DrivingDominates, -1, 0, 0) == "Θ(1)");
    CHECK(render_theta(Branch::Balanced, 0, 0, 0) == "Θ(log^1 n)");
    CHECK(render_theta(Branch::Balanced, 1.5, 1.5, 0.5) == "Θ(n^1.5 · log^1.5 n)");
    CHECK(render_theta(Branch::RootDominates, 0.25, 0, 3) == "Θ(n^0.2500000000)");
}

TEST_CASE("branch trichotomy and invariants") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(0, 4);
    std::uniform_real_distribution<double> tiny(-1e-8, 1e-8);
    for (int i = 0; i < 5000; ++i) {
        const double alpha = u(rng), beta = u(rng);
        const double r = (i % 3 == 0) ? alpha + tiny(rng) : u(rng);
        AsymptoticClass c = classify(r, alpha, beta);
        int hits = (r > alpha + kDefaultTau) + (std::abs(r - alpha) <= kDefaultTau) + (r < alpha - kDefaultTau);
        CHECK(hits == 1);
        switch (c.branch) {
            case Branch::RootDominates: CHECK(r > alpha + kDefaultTau); break;
            case Branch::Balanced: CHECK(std::abs(r - alpha) <= kDefaultTau); break;
            case Branch::DrivingDominates: CHECK(r < alpha - kDefaultTau); break;
        }
        CHECK(c.theta == render_theta(c.branch, r, alpha, beta));
        CHECK(c.margin == std::abs(r - alpha));
    }
}

TEST_CASE("fragile and constant-growth flags") {
    AsymptoticClass near = classify(1.00001, 1, 0);
    CHECK(near.branch == Branch::RootDominates);
    CHECK(near.fragile);
    CHECK(near.warnings().size() == 1);
    CHECK_FALSE(classify(1.001, 1, 0).fragile);
    CHECK_FALSE(classify(1 + 1e-10, 1, 0).fragile);

    AsymptoticClass flat = classify_text("T(n) = 1/2*T(ceil(0.5*n)) + 1");
    CHECK(flat.branch == Branch::DrivingDominates);
    CHECK(flat.constant_growth);
    CHECK(flat.theta == "Θ(1)");
    CHECK(flat.warnings().size() == 1);
    CHECK_FALSE(classify(-1, 0, 1).constant_growth);
}

TEST_CASE("Balanced is decided exactly when the data are rational") {
    // g(1) = 1/2 + 2/4 = 1 exactly; the floating root may sit a few ulps off.
    const std::string text = "T(n) = T(ceil(1/2*n)) + 2*T(ceil(1/4*n)) + n";
    CHECK(exact_balance_sign(spec_of(text)) == 0);
    AsymptoticClass c = classify_text(text, 1e-300);
    CHECK(c.branch == Branch::Balanced);
    CHECK(c.exact);
    CHECK(classify_text("T(n) = 3*T(ceil(1/2*n)) + n", 1e-300).exact);
    CHECK(exact_balance_sign(spec_of("T(n) = 3*T(ceil(1/2*n)) + n")) == 1);
    CHECK(exact_balance_sign(spec_of("T(n) = T(ceil(1/5*n)) + T(ceil(7/10*n)) + n")) == -1);
    CHECK_FALSE(exact_balance_sign(spec_of("T(n) = 2*T(ceil(1/2*n)) + n^1.5")).has_value());
}

TEST_CASE("property: scaling c never changes the branch") {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 200; ++i) {
        RecurrenceSpec s = testing::random_spec(rng);
        RawSpec raw = s.raw();
        raw.driving.c = s.c() * 1000;
        RecurrenceSpec scaled = validated(raw);
        CHECK(classify(s, solve_root(s)).branch == classify(scaled, solve_root(scaled)).branch);
    }
}

TEST_CASE("estimate_exponent examples") {
    std::vector<Sample> sq;
    for (int e = 1; e <= 10; ++e) {
        const double n = std::ldexp(1.0, e);
        sq.push_back({std::int64_t{1} << e, n * n});
    }
    FitResult f = estimate_exponent(sq);
    CHECK(std::abs(f.slope - 2.0) <= 1e-9);
    CHECK(std::abs(f.intercept) <= 1e-9);
    CHECK(f.std_error <= 1e-9);
    CHECK(f.points == 10);

    FitResult merge = fit_powers("T(n)=2*T(ceil(0.5*n))+n", 8, 20);
    CHECK(merge.slope >= 1.0);
    CHECK(merge.slope <= 1.15);

    FitResult four = fit_powers("T(n)=4*T(ceil(0.5*n))+n", 10, 20);
    CHECK(std::abs(four.slope - 2.0) <= 0.05);
    CHECK(four.std_error >= 0);
}

TEST_CASE("estimate_exponent errors") {
    std::vector<Sample> two{{2, 1}, {4, 2}};
    CHECK(code_of([&] { estimate_exponent(two); }) == ErrorCode::TooFewSamples);
    std::vector<Sample> same{{4, 1}, {4, 2}, {4, 3}};
    CHECK(code_of([&] { estimate_exponent(same); }) == ErrorCode::TooFewSamples);
    std::vector<Sample> zero{{2, 1}, {4, 0}, {8, 3}};
    CHECK(code_of([&] { estimate_exponent(zero); }) == ErrorCode::NonPositiveValue);
    std::vector<Sample> one{{1, 1}, {4, 2}, {8, 3}};
    CHECK(code_of([&] { estimate_exponent(one); }) == ErrorCode::NonPositiveValue);
}

TEST_CASE("ratio_exponent examples") {
    CHECK(std::abs(ratio_exponent(spec_of("T(n)=2*T(ceil(0.5*n))+1"), 1 << 15) - 1.0) <= 0.01);
    std::vector<double> sq(4096);
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = static_cast<double>((i + 1) * (i + 1));
    for (std::int64_t n : {1, 3, 100, 2048}) CHECK(ratio_exponent(sq, n) == 2.0);
    CHECK(std::abs(ratio_exponent(spec_of("T(n)=T(ceil(1/5*n))+T(ceil(7/10*n))+n ; n0=4"), 1 << 15) - 1.0) <=
          0.05);
    EvalTable t = eval_upto(spec_of("T(n)=T(ceil(0.5*n))+1"), 100);
    CHECK(code_of([&] { ratio_exponent(t, 51); }) == ErrorCode::Precondition);
    CHECK(code_of([&] { ratio_exponent(t, 1); }) == ErrorCode::Precondition);
}

TEST_CASE("compare examples") {
    FitResult fit;
    fit.slope = 1.98;
    Comparison a = compare(classify(2, 1, 0), fit);
    CHECK(a.verdict == Verdict::Consistent);
    CHECK(a.predicted == 2);
    CHECK(a.gap == doctest::Approx(0.02));
    CHECK(a.threshold == kFitTolerance);

    fit.slope = 1.12;
    Comparison b = compare(classify(1, 1, 0), fit);
    CHECK(b.verdict == Verdict::Consistent);
    CHECK(b.threshold == kBalancedFitTolerance);

    fit.slope = 1.5;
    CHECK(compare(classify(2, 1, 0), fit).verdict == Verdict::Inconsistent);
    fit.slope = 1.05;
    Comparison d = compare(classify(0.84, 1, 0), fit);
    CHECK(d.predicted == 1);
    CHECK(d.verdict == Verdict::Consistent);
    CHECK(std::string(to_string(Verdict::Inconsistent)) == "INCONSISTENT");
}

TEST_CASE("growth classification agrees with fitted slopes on single-term recurrences") {
    struct Case {
        const char* text;
        Branch branch;
    };
    const Case suite[] = {
        {"T(n)=2*T(ceil(1/2*n))+n", Branch::Balanced},
        {"T(n)=3*T(ceil(1/2*n))+n", Branch::RootDominates},
        {"T(n)=4*T(ceil(1/2*n))+n", Branch::RootDominates},
        {"T(n)=T(ceil(1/2*n))+1", Branch::Balanced},
        {"T(n)=2*T(ceil(1/4*n))+1", Branch::RootDominates},
        {"T(n)=2*T(ceil(1/4*n))+n", Branch::DrivingDominates},
        {"T(n)=7*T(ceil(1/4*n))+n", Branch::RootDominates},
        {"T(n)=T(ceil(1/2*n))+n", Branch::DrivingDominates},
        {"T(n)=8*T(ceil(1/2*n))+n^2", Branch::RootDominates},
        {"T(n)=9*T(ceil(1/3*n))+n^2", Branch::Balanced},
    };
    for (const Case& c : suite) {
        RecurrenceSpec s = spec_of(c.text);
        AsymptoticClass cls = classify(s, solve_root(s));
        CHECK_MESSAGE(cls.branch == c.branch, c.text);
        FitResult fit = estimate_exponent(sample_geometric(s, 1 << 10, 1 << 20, 11));
        Comparison cmp = compare(cls, fit);
        CHECK_MESSAGE(cmp.verdict == Verdict::Consistent, c.text, " slope ", fit.slope, " predicted ",
                      cmp.predicted);
    }
}
