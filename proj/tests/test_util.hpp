#pragma once

// Shared helpers for the unit tests: deterministic random specs.

#include <cstdint>
#include <random>
#include <string>

#include "dcrec/model.hpp"
#include "dcrec/parser.hpp"

namespace dcrec::testing {

inline RecurrenceSpec spec_of(const std::string& text) { return parse(text); }

/// Random admissible spec with rational a, b and alpha, beta drawn from {0, 0.5, 1, 2}.
inline RecurrenceSpec random_spec(std::mt19937_64& rng, bool allow_log = true, int max_k = 4) {
    std::uniform_int_distribution<int> k_dist(1, max_k);
    std::uniform_int_distribution<int> den_dist(2, 20);
    std::uniform_int_distribution<int> a_num(1, 6);
    std::uniform_int_distribution<int> a_den(1, 4);
    static const double kExponents[] = {0.0, 0.5, 1.0, 2.0};
    std::uniform_int_distribution<int> exp_idx(0, 3);
    std::uniform_int_distribution<int> extra_n0(0, 3);

    RawSpec raw;
    const int k = k_dist(rng);
    for (int i = 0; i < k; ++i) {
        const int den = den_dist(rng);
        std::uniform_int_distribution<int> num(1, den - 1);
        raw.terms.push_back({Number::from_rational(*Rational::make(a_num(rng), a_den(rng))),
                             Number::from_rational(*Rational::make(num(rng), den))});
    }
    raw.driving.c = Number::from_rational(*Rational::make(a_num(rng), a_den(rng)));
    raw.driving.alpha = kExponents[exp_idx(rng)];
    raw.driving.beta = allow_log ? kExponents[exp_idx(rng)] : 0.0;
    raw.d = Number::from_rational(*Rational::make(a_num(rng), a_den(rng)));
    raw.n0 = auto_n0(raw.terms) + extra_n0(rng);
    return validated(raw);
}

}  // namespace dcrec::testing
