#include "sievekit/kernels.hpp"

#include <algorithm>

namespace sievekit::kernels::detail {

void min_plus_closure_scalar(double* m, std::size_t n, std::size_t stride) {
    for (std::size_t k = 0; k < n; ++k) {
        const double* row_k = m + k * stride;
        for (std::size_t i = 0; i < n; ++i) {
            double* row_i = m + i * stride;
            const double a = row_i[k];
            for (std::size_t j = 0; j < n; ++j)
                row_i[j] = std::min(row_i[j], a + row_k[j]);
        }
    }
}

void min_max_closure_scalar(double* m, std::size_t n, std::size_t stride) {
    for (std::size_t k = 0; k < n; ++k) {
        const double* row_k = m + k * stride;
        for (std::size_t i = 0; i < n; ++i) {
            double* row_i = m + i * stride;
            const double a = row_i[k];
            for (std::size_t j = 0; j < n; ++j)
                row_i[j] = std::min(row_i[j], std::max(a, row_k[j]));
        }
    }
}

}  // namespace sievekit::kernels::detail
