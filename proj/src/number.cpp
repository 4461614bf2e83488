#include "dcrec/number.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

#include <boost/multiprecision/cpp_int.hpp>

namespace dcrec {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kInt64Max = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kExactDoubleLimit = std::int64_t{1} << 53;

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i128 pow10_128(int k) {
    i128 p = 1;
    for (int i = 0; i < k; ++i) p *= 10;
    return p;
}

std::string u128_digits(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

// Exact value of a decimal literal "[-]digits[.digits][e[+-]digits]".
// Returns nullopt when the text is not such a literal or does not fit.
struct DecimalScan {
    bool well_formed = false;
    std::optional<Rational> exact;
};

DecimalScan scan_decimal(std::string_view text) {
    DecimalScan out;
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    std::string mantissa;
    std::size_t int_digits = 0, frac_digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        mantissa.push_back(text[i++]);
        ++int_digits;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            mantissa.push_back(text[i++]);
            ++frac_digits;
        }
    }
    if (int_digits + frac_digits == 0) return out;
    long exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
            exp_negative = text[i] == '-';
            ++i;
        }
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            if (exponent < 100000) exponent = exponent * 10 + (text[i] - '0');
            ++i;
        }
        if (i == start) return out;
        if (exp_negative) exponent = -exponent;
    }
    if (i != text.size()) return out;
    out.well_formed = true;

    std::size_t first = mantissa.find_first_not_of('0');
    if (first == std::string::npos) {
        out.exact = Rational{0, 1};
        return out;
    }
    mantissa.erase(0, first);
    long scale = exponent - static_cast<long>(frac_digits);
    while (!mantissa.empty() && mantissa.back() == '0') {
        mantissa.pop_back();
        ++scale;
    }
    if (mantissa.size() > 36 || scale > 36 || scale < -36) return out;
    i128 m = 0;
    for (char ch : mantissa) m = m * 10 + (ch - '0');
    if (negative) m = -m;
    if (scale >= 0) {
        i128 p = pow10_128(static_cast<int>(scale));
        if (m > kInt64Max / p || -m > kInt64Max / p) return out;
        out.exact = Rational::make(m * p, 1);
    } else {
        out.exact = Rational::make(m, pow10_128(static_cast<int>(-scale)));
    }
    return out;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string shortest(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

}  // namespace

std::optional<Rational> Rational::make(i128 num, i128 den) {
    if (den == 0) return std::nullopt;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    u128 g = gcd128(static_cast<u128>(num < 0 ? -num : num), static_cast<u128>(den));
    if (g > 1) {
        num /= static_cast<i128>(g);
        den /= static_cast<i128>(g);
    }
    if (num > kInt64Max || num < -kInt64Max || den > kInt64Max) return std::nullopt;
    return Rational{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

double Rational::to_double() const {
    if (num > -kExactDoubleLimit && num < kExactDoubleLimit && den <= kExactDoubleLimit)
        return static_cast<double>(num) / static_cast<double>(den);
    boost::multiprecision::cpp_rational q(num, den);
    return q.convert_to<double>();
}

std::string Rational::to_string() const {
    // den = 2^twos * 5^fives terminates after max(twos, fives) decimals.
    std::int64_t rest = den;
    int twos = 0, fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    int places = std::max(twos, fives);
    if (rest == 1 && places <= 36) {
        i128 mult = pow10_128(places) / den;
        u128 mag = static_cast<u128>(num < 0 ? -static_cast<i128>(num) : static_cast<i128>(num));
        if (mag <= std::numeric_limits<u128>::max() / static_cast<u128>(mult)) {
            std::string digits = u128_digits(mag * static_cast<u128>(mult));
            if (places > 0) {
                if (digits.size() <= static_cast<std::size_t>(places))
                    digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
                digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
            }
            return (num < 0 ? "-" : "") + digits;
        }
    }
    return std::to_string(num) + "/" + std::to_string(den);
}

std::strong_ordering Rational::operator<=>(const Rational& other) const {
    return static_cast<i128>(num) * other.den <=> static_cast<i128>(other.num) * den;
}

std::optional<Rational> checked_add(const Rational& x, const Rational& y) {
    i128 num = static_cast<i128>(x.num) * y.den + static_cast<i128>(y.num) * x.den;
    i128 den = static_cast<i128>(x.den) * y.den;
    return Rational::make(num, den);
}

Number Number::from_double(double v) {
    Number out;
    out.value_ = v;
    out.exact_ = std::nullopt;
    if (std::isfinite(v)) out.exact_ = scan_decimal(shortest(v)).exact;
    return out;
}

Number Number::from_rational(Rational q) {
    Number out;
    out.value_ = q.to_double();
    out.exact_ = q;
    return out;
}

std::optional<Number> Number::parse(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_int(text.substr(0, slash));
        auto den = parse_int(text.substr(slash + 1));
        if (!num || !den || *den <= 0) return std::nullopt;
        auto q = Rational::make(*num, *den);
        if (!q) return std::nullopt;
        return from_rational(*q);
    }
    DecimalScan scan = scan_decimal(text);
    if (!scan.well_formed) return std::nullopt;
    if (scan.exact) return from_rational(*scan.exact);
    std::string owned(text.front() == '+' ? text.substr(1) : text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(owned.data(), owned.data() + owned.size(), v);
    if (ec != std::errc{} || ptr != owned.data() + owned.size() || !std::isfinite(v))
        return std::nullopt;
    return from_double(v);
}

bool Number::is_integer() const {
    if (exact_) return exact_->den == 1;
    return std::isfinite(value_) && value_ == std::floor(value_);
}

std::string Number::to_string() const {
    if (exact_) return exact_->to_string();
    return shortest(value_);
}

Number operator+(const Number& x, const Number& y) {
    if (x.exact() && y.exact()) {
        if (auto sum = checked_add(*x.exact(), *y.exact())) return Number::from_rational(*sum);
    }
    return Number::from_double(x.value() + y.value());
}

bool number_less(const Number& x, const Number& y) {
    if (x.value() != y.value()) return x.value() < y.value();
    if (x.exact() && y.exact()) return *x.exact() < *y.exact();
    return false;
}

bool number_same(const Number& x, const Number& y) {
    if (x.exact() && y.exact()) return *x.exact() == *y.exact();
    return x.value() == y.value();
}

}  // namespace dcrec
