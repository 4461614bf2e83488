#pragma once

// Data-parallel inner loops of the evaluator and the certificate verifier.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant picked at runtime from CPUID. Kernels use only IEEE add, mul, div,
// compare and max, in the same order on every backend, so every backend
// returns bit-identical results. DCREC_SIMD=scalar in the environment pins
// the scalar backend at startup.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace dcrec::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend);

/// out[j] = ((coeff[0]*values[idx[0][j]] + coeff[1]*values[idx[1][j]]) + ...) + drive[j]
///
/// `indices` holds coeff.size() rows of out.size() entries (row-major, one row
/// per term). `values` must not alias any gathered entry through `out`.
struct CombineArgs {
    const double* values = nullptr;
    std::span<const double> coeff;
    std::span<const std::int64_t> indices;
    std::span<const double> drive;
    std::span<double> out;
};

struct KernelTable {
    Backend backend;
    void (*combine)(const CombineArgs& args);
    /// First j with lhs[j] > scale * rhs[j]; lhs.size() if none.
    std::size_t (*first_exceeding)(std::span<const double> lhs, std::span<const double> rhs,
                                   double scale);
    /// First j with a non-finite x[j]; x.size() if none.
    std::size_t (*first_nonfinite)(std::span<const double> x);
    /// max_j num[j] / den[j]; -inf for empty input.
    double (*max_ratio)(std::span<const double> num, std::span<const double> den);
    /// max_j |actual[j] - expected[j]| / |expected[j]|; 0 for empty input.
    double (*max_rel_residual)(std::span<const double> actual, std::span<const double> expected);
};

const KernelTable& scalar_table();
/// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_table();

bool backend_supported(Backend backend);
Backend active_backend();
/// Throws std::invalid_argument when the backend is not supported here.
void set_backend(Backend backend);
const KernelTable& active();

inline void combine(const CombineArgs& args) { active().combine(args); }
inline std::size_t first_exceeding(std::span<const double> lhs, std::span<const double> rhs,
                                   double scale = 1.0) {
    return active().first_exceeding(lhs, rhs, scale);
}
inline std::size_t first_nonfinite(std::span<const double> x) { return active().first_nonfinite(x); }
inline double max_ratio(std::span<const double> num, std::span<const double> den) {
    return active().max_ratio(num, den);
}
inline double max_rel_residual(std::span<const double> actual, std::span<const double> expected) {
    return active().max_rel_residual(actual, expected);
}

}  // namespace dcrec::kernels
