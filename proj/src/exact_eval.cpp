#include "dcrec/exact_eval.hpp"

namespace dcrec {

BigRational to_big(const Rational& q) {
    return BigRational(q.num, q.den);
}

std::string exact_mode_blocker(const RecurrenceSpec& spec) {
    const DrivingTerm& drv = spec.driving();
    if (!drv.c.exact() || !drv.alpha.exact() || !spec.d().exact()) return "c, alpha and d must be exact rationals";
    if (drv.alpha.exact()->den != 1) return "alpha must be an integer";
    if (drv.alpha.exact()->num > 64) return "alpha above 64";
    if (drv.beta.value() != 0.0) return "beta must be 0";
    for (const RecTerm& t : spec.terms())
        if (!t.a.exact() || !t.b.exact()) return "every a and b must be an exact rational";
    return {};
}

std::vector<BigRational> eval_exact(const RecurrenceSpec& spec, std::int64_t N) {
    if (std::string why = exact_mode_blocker(spec); !why.empty())
        throw Error(ErrorCode::Precondition, "exact evaluation unavailable: " + why);
    if (N < 1 || N > kExactEvalLimit)
        throw Error(ErrorCode::Precondition, "exact evaluation needs 1 <= N <= 10000");

    const BigRational c = to_big(*spec.driving().c.exact());
    const BigRational d = to_big(*spec.d().exact());
    const auto alpha = static_cast<unsigned>(spec.driving().alpha.exact()->num);
    std::vector<BigRational> coeff;
    std::vector<CeilIndex> index;
    for (const RecTerm& t : spec.terms()) {
        coeff.push_back(to_big(*t.a.exact()));
        index.emplace_back(t.b);
    }

    std::vector<BigRational> values(static_cast<std::size_t>(N) + 1);
    for (std::int64_t n = 1; n <= N; ++n) {
        if (n < spec.n0()) {
            values[n] = d;
            continue;
        }
        BigRational acc = c * BigRational(boost::multiprecision::pow(boost::multiprecision::cpp_int(n), alpha));
        for (std::size_t t = 0; t < coeff.size(); ++t) acc += coeff[t] * values[index[t](n)];
        values[n] = acc;
    }
    return values;
}

}  // namespace dcrec
