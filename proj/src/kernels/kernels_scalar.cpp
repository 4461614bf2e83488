#include <cmath>
#include <limits>

#include "dcrec/kernels.hpp"

namespace dcrec::kernels {

namespace {

void combine_scalar(const CombineArgs& args) {
    const std::size_t len = args.out.size();
    const std::size_t k = args.coeff.size();
    const std::int64_t* idx = args.indices.data();
    for (std::size_t j = 0; j < len; ++j) {
        double acc = args.coeff[0] * args.values[idx[j]];
        for (std::size_t t = 1; t < k; ++t) acc = acc + args.coeff[t] * args.values[idx[t * len + j]];
        args.out[j] = acc + args.drive[j];
    }
}

std::size_t first_exceeding_scalar(std::span<const double> lhs, std::span<const double> rhs,
                                   double scale) {
    for (std::size_t j = 0; j < lhs.size(); ++j)
        if (lhs[j] > scale * rhs[j]) return j;
    return lhs.size();
}

std::size_t first_nonfinite_scalar(std::span<const double> x) {
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!std::isfinite(x[j])) return j;
    return x.size();
}

double max_ratio_scalar(std::span<const double> num, std::span<const double> den) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < num.size(); ++j) {
        double q = num[j] / den[j];
        if (q > best) best = q;
    }
    return best;
}

double max_rel_residual_scalar(std::span<const double> actual, std::span<const double> expected) {
    double best = 0.0;
    for (std::size_t j = 0; j < actual.size(); ++j) {
        double q = std::abs(actual[j] - expected[j]) / std::abs(expected[j]);
        if (q > best) best = q;
    }
    return best;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{Backend::Scalar,         combine_scalar,
                                   first_exceeding_scalar,  first_nonfinite_scalar,
                                   max_ratio_scalar,        max_rel_residual_scalar};
    return table;
}

}  // namespace dcrec::kernels
