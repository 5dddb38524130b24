#ifndef SIEVEKIT_KERNELS_HPP
#define SIEVEKIT_KERNELS_HPP

#include <cstddef>
#include <string>

namespace sievekit::kernels {

// Dense double-precision distance-closure kernels. Each runs a full
// Floyd-Warshall pass in place on a row-major n x n matrix with the given row
// stride, leaving the matrix closed under the corresponding path rule:
//   min_plus: d[i][j] <- min(d[i][j], d[i][k] + d[k][j])   (shortest paths)
//   min_max : d[i][j] <- min(d[i][j], max(d[i][k], d[k][j])) (minimax paths)
// The SIMD variants perform the identical operations in the identical order,
// so results match the scalar reference bit for bit.

enum class Backend { scalar, avx2 };

// Selected once per process: AVX2 when the CPU supports it, unless the
// environment variable SIEVEKIT_KERNELS=scalar overrides.
Backend active_backend();
std::string backend_name(Backend b);
void force_backend(Backend b);  // for tests
bool avx2_available();

void min_plus_closure(double* m, std::size_t n, std::size_t stride);
void min_max_closure(double* m, std::size_t n, std::size_t stride);

namespace detail {
void min_plus_closure_scalar(double* m, std::size_t n, std::size_t stride);
void min_max_closure_scalar(double* m, std::size_t n, std::size_t stride);
#if defined(__x86_64__) || defined(__i386__)
void min_plus_closure_avx2(double* m, std::size_t n, std::size_t stride);
void min_max_closure_avx2(double* m, std::size_t n, std::size_t stride);
#endif
}  // namespace detail

}  // namespace sievekit::kernels

#endif
