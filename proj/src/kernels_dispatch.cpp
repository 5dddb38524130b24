#include "sievekit/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace sievekit::kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

Backend detect() {
    if (const char* env = std::getenv("SIEVEKIT_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return Backend::avx2;
    }
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}

Backend g_backend = detect();

}  // namespace

Backend active_backend() { return g_backend; }

std::string backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void force_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_available()) b = Backend::scalar;
    g_backend = b;
}

void min_plus_closure(double* m, std::size_t n, std::size_t stride) {
#if defined(__x86_64__) || defined(__i386__)
    if (g_backend == Backend::avx2) {
        detail::min_plus_closure_avx2(m, n, stride);
        return;
    }
#endif
    detail::min_plus_closure_scalar(m, n, stride);
}

void min_max_closure(double* m, std::size_t n, std::size_t stride) {
#if defined(__x86_64__) || defined(__i386__)
    if (g_backend == Backend::avx2) {
        detail::min_max_closure_avx2(m, n, stride);
        return;
    }
#endif
    detail::min_max_closure_scalar(m, n, stride);
}

}  // namespace sievekit::kernels
