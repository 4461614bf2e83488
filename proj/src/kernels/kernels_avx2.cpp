// AVX2 variants of the kernels in kernels_scalar.cpp. Compiled with -mavx2
// only (never -mfma) and called only after a CPUID check.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "dcrec/kernels.hpp"

namespace dcrec::kernels {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256i load_idx(const std::int64_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

void combine_avx2(const CombineArgs& args) {
    const std::size_t len = args.out.size();
    const std::size_t k = args.coeff.size();
    const std::int64_t* idx = args.indices.data();
    const double* values = args.values;
    std::size_t j = 0;
    for (; j + kLanes <= len; j += kLanes) {
        __m256d acc = _mm256_mul_pd(_mm256_set1_pd(args.coeff[0]),
                                    _mm256_i64gather_pd(values, load_idx(idx + j), 8));
        for (std::size_t t = 1; t < k; ++t) {
            __m256d v = _mm256_i64gather_pd(values, load_idx(idx + t * len + j), 8);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(args.coeff[t]), v));
        }
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(args.drive.data() + j));
        _mm256_storeu_pd(args.out.data() + j, acc);
    }
    for (; j < len; ++j) {
        double acc = args.coeff[0] * values[idx[j]];
        for (std::size_t t = 1; t < k; ++t) acc = acc + args.coeff[t] * values[idx[t * len + j]];
        args.out[j] = acc + args.drive[j];
    }
}

std::size_t first_exceeding_avx2(std::span<const double> lhs, std::span<const double> rhs,
                                 double scale) {
    const __m256d s = _mm256_set1_pd(scale);
    std::size_t j = 0;
    for (; j + kLanes <= lhs.size(); j += kLanes) {
        __m256d bound = _mm256_mul_pd(s, _mm256_loadu_pd(rhs.data() + j));
        int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(lhs.data() + j), bound, _CMP_GT_OQ));
        if (mask != 0) return j + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
    }
    for (; j < lhs.size(); ++j)
        if (lhs[j] > scale * rhs[j]) return j;
    return lhs.size();
}

std::size_t first_nonfinite_avx2(std::span<const double> x) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + kLanes <= x.size(); j += kLanes) {
        __m256d v = _mm256_loadu_pd(x.data() + j);
        // x - x is 0 for finite x and NaN for inf/NaN.
        int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_sub_pd(v, v), zero, _CMP_NEQ_UQ));
        if (mask != 0) return j + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
    }
    for (; j < x.size(); ++j)
        if (!std::isfinite(x[j])) return j;
    return x.size();
}

inline double hmax(__m256d v) {
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, v);
    double best = lanes[0];
    for (std::size_t i = 1; i < kLanes; ++i)
        if (lanes[i] > best) best = lanes[i];
    return best;
}

double max_ratio_avx2(std::span<const double> num, std::span<const double> den) {
    const double neg_inf = -std::numeric_limits<double>::infinity();
    __m256d best = _mm256_set1_pd(neg_inf);
    std::size_t j = 0;
    for (; j + kLanes <= num.size(); j += kLanes) {
        __m256d q = _mm256_div_pd(_mm256_loadu_pd(num.data() + j), _mm256_loadu_pd(den.data() + j));
        best = _mm256_max_pd(q, best);  // NaN in q keeps best, like the scalar loop
    }
    double out = hmax(best);
    for (; j < num.size(); ++j) {
        double q = num[j] / den[j];
        if (q > out) out = q;
    }
    return out;
}

double max_rel_residual_avx2(std::span<const double> actual, std::span<const double> expected) {
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d best = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + kLanes <= actual.size(); j += kLanes) {
        __m256d e = _mm256_loadu_pd(expected.data() + j);
        __m256d diff = _mm256_and_pd(_mm256_sub_pd(_mm256_loadu_pd(actual.data() + j), e), abs_mask);
        __m256d q = _mm256_div_pd(diff, _mm256_and_pd(e, abs_mask));
        best = _mm256_max_pd(q, best);
    }
    double out = hmax(best);
    for (; j < actual.size(); ++j) {
        double q = std::abs(actual[j] - expected[j]) / std::abs(expected[j]);
        if (q > out) out = q;
    }
    return out;
}

}  // namespace

const KernelTable* avx2_table() {
    static const KernelTable table{Backend::Avx2,         combine_avx2,
                                   first_exceeding_avx2,  first_nonfinite_avx2,
                                   max_ratio_avx2,        max_rel_residual_avx2};
    return &table;
}

}  // namespace dcrec::kernels
