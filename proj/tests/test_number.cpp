#include <doctest.h>

#include <random>

#include "dcrec/number.hpp"

using dcrec::Number;
using dcrec::Rational;

TEST_CASE("decimal and fraction literals keep their exact value") {
    auto q = Number::parse("0.25");
    REQUIRE(q);
    CHECK(q->value() == 0.25);
    CHECK(*q->exact() == Rational{1, 4});

    auto f = Number::parse("7/10");
    REQUIRE(f);
    CHECK(f->value() == 0.7);
    CHECK(*f->exact() == Rational{7, 10});

    CHECK(*Number::parse("1e-3")->exact() == Rational{1, 1000});
    CHECK(*Number::parse("2.50E1")->exact() == Rational{25, 1});
    CHECK(*Number::parse("-0.5")->exact() == Rational{-1, 2});
    CHECK(*Number::parse("6/4")->exact() == Rational{3, 2});
}

TEST_CASE("malformed numbers are rejected") {
    for (const char* bad : {"", "abc", "1..2", "1/0", "1/-2", "1.5/2", "e5", "1e", "--1", "inf", "nan"})
        CHECK_MESSAGE(!Number::parse(bad), bad);
}

TEST_CASE("doubles adopt their shortest decimal as exact form") {
    CHECK(*Number(0.1).exact() == Rational{1, 10});
    CHECK(*Number(3.0).exact() == Rational{3, 1});
    // 17 significant digits below 0.01 need a denominator beyond int64.
    Number tiny = Number::from_double(0.0012345678901234567);
    CHECK_FALSE(tiny.exact());
    CHECK(tiny.value() == 0.0012345678901234567);
}

TEST_CASE("canonical text") {
    CHECK(Number::from_rational({1, 4}).to_string() == "0.25");
    CHECK(Number::from_rational({1, 3}).to_string() == "1/3");
    CHECK(Number::from_rational({2, 1}).to_string() == "2");
    CHECK(Number::from_rational({-1, 2}).to_string() == "-0.5");
    CHECK(Number::from_rational({1, 1024}).to_string() == "0.0009765625");
    CHECK(Number::from_rational({7, 3}).to_string() == "7/3");
}

TEST_CASE("exact sums stay exact") {
    Number s = Number(0.1) + Number(0.2);
    CHECK(*s.exact() == Rational{3, 10});
    CHECK(s.value() == 0.3);
}

TEST_CASE("parse(to_string(x)) == x") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> small(-100000, 100000);
    std::uniform_int_distribution<std::int64_t> den(1, 100000);
    std::uniform_real_distribution<double> real(-1e6, 1e6);
    std::uniform_real_distribution<double> unit(0.0, 0.01);
    for (int i = 0; i < 2000; ++i) {
        Number q = Number::from_rational(*Rational::make(small(rng), den(rng)));
        Number x = Number::from_double(real(rng));
        Number t = Number::from_double(unit(rng));
        for (const Number& v : {q, x, t}) {
            auto back = Number::parse(v.to_string());
            REQUIRE(back);
            CHECK(*back == v);
        }
    }
}
