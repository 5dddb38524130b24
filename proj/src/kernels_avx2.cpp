// Compiled with -mavx2; callers must gate on runtime CPU support.
#include "sievekit/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <algorithm>

namespace sievekit::kernels::detail {

void min_plus_closure_avx2(double* m, std::size_t n, std::size_t stride) {
    for (std::size_t k = 0; k < n; ++k) {
        const double* row_k = m + k * stride;
        for (std::size_t i = 0; i < n; ++i) {
            double* row_i = m + i * stride;
            const __m256d a = _mm256_set1_pd(row_i[k]);
            std::size_t j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d via = _mm256_add_pd(a, _mm256_loadu_pd(row_k + j));
                __m256d cur = _mm256_loadu_pd(row_i + j);
                _mm256_storeu_pd(row_i + j, _mm256_min_pd(cur, via));
            }
            const double as = row_i[k];
            for (; j < n; ++j) row_i[j] = std::min(row_i[j], as + row_k[j]);
        }
    }
}

void min_max_closure_avx2(double* m, std::size_t n, std::size_t stride) {
    for (std::size_t k = 0; k < n; ++k) {
        const double* row_k = m + k * stride;
        for (std::size_t i = 0; i < n; ++i) {
            double* row_i = m + i * stride;
            const __m256d a = _mm256_set1_pd(row_i[k]);
            std::size_t j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d via = _mm256_max_pd(a, _mm256_loadu_pd(row_k + j));
                __m256d cur = _mm256_loadu_pd(row_i + j);
                _mm256_storeu_pd(row_i + j, _mm256_min_pd(cur, via));
            }
            const double as = row_i[k];
            for (; j < n; ++j) row_i[j] = std::min(row_i[j], std::max(as, row_k[j]));
        }
    }
}

}  // namespace sievekit::kernels::detail

#endif
