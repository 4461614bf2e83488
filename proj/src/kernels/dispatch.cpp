#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "dcrec/kernels.hpp"

namespace dcrec::kernels {

#ifndef DCREC_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(DCREC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable* initial_table() {
    const char* forced = std::getenv("DCREC_SIMD");
    if (forced != nullptr && std::string(forced) == "scalar") return &scalar_table();
    if (cpu_has_avx2() && avx2_table() != nullptr) return avx2_table();
    return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

std::string_view to_string(Backend backend) {
    return backend == Backend::Avx2 ? "avx2" : "scalar";
}

bool backend_supported(Backend backend) {
    if (backend == Backend::Scalar) return true;
    return avx2_table() != nullptr && cpu_has_avx2();
}

Backend active_backend() { return current().load()->backend; }

void set_backend(Backend backend) {
    if (!backend_supported(backend))
        throw std::invalid_argument("SIMD backend not supported on this machine: " +
                                    std::string(to_string(backend)));
    current().store(backend == Backend::Avx2 ? avx2_table() : &scalar_table());
}

const KernelTable& active() { return *current().load(); }

}  // namespace dcrec::kernels
