#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "sievekit/kernels.hpp"

using namespace sievekit;

namespace {

std::vector<double> random_matrix(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = dist(rng);
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
    return m;
}

// Plain reference: repeated relaxation until no change.
void naive_min_plus(std::vector<double>& m, std::size_t n) {
    bool dirty = true;
    while (dirty) {
        dirty = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (m[i * n + k] + m[k * n + j] < m[i * n + j]) {
                        m[i * n + j] = m[i * n + k] + m[k * n + j];
                        dirty = true;
                    }
    }
}

void naive_min_max(std::vector<double>& m, std::size_t n) {
    bool dirty = true;
    while (dirty) {
        dirty = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    double via = std::max(m[i * n + k], m[k * n + j]);
                    if (via < m[i * n + j]) {
                        m[i * n + j] = via;
                        dirty = true;
                    }
                }
    }
}

}  // namespace

TEST_CASE("scalar closure matches repeated relaxation") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 1 + rng() % 12;
        auto a = random_matrix(rng, n);
        auto b = a;
        kernels::detail::min_plus_closure_scalar(a.data(), n, n);
        naive_min_plus(b, n);
        // Path sums associate differently between the two algorithms, so
        // min-plus values may differ in the last ulp.
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));

        // Min-max never creates new values; selections agree exactly.
        auto c = random_matrix(rng, n);
        auto d = c;
        kernels::detail::min_max_closure_scalar(c.data(), n, n);
        naive_min_max(d, n);
        CHECK(c == d);
    }
}

TEST_CASE("avx2 closure is bit-identical to the scalar reference") {
    if (!kernels::avx2_available()) {
        MESSAGE("avx2 unavailable on this host, skipping");
        return;
    }
    std::mt19937_64 rng(43);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng() % 33;
        auto a = random_matrix(rng, n);
        auto b = a;
        kernels::detail::min_plus_closure_scalar(a.data(), n, n);
        kernels::detail::min_plus_closure_avx2(b.data(), n, n);
        CHECK(a == b);

        auto c = random_matrix(rng, n);
        auto d = c;
        kernels::detail::min_max_closure_scalar(c.data(), n, n);
        kernels::detail::min_max_closure_avx2(d.data(), n, n);
        CHECK(c == d);
    }
}

TEST_CASE("closures are idempotent") {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 20; ++t) {
        std::size_t n = 2 + rng() % 10;
        // Min-max is pure selection, so a second pass changes nothing.
        auto a = random_matrix(rng, n);
        kernels::min_max_closure(a.data(), n, n);
        auto again = a;
        kernels::min_max_closure(again.data(), n, n);
        CHECK(a == again);

        // Min-plus can re-round a path sum by an ulp on the second pass.
        auto b = random_matrix(rng, n);
        kernels::min_plus_closure(b.data(), n, n);
        auto b2 = b;
        kernels::min_plus_closure(b2.data(), n, n);
        for (std::size_t i = 0; i < b.size(); ++i)
            CHECK(b2[i] == doctest::Approx(b[i]).epsilon(1e-13));
    }
}

TEST_CASE("strided layout works") {
    std::mt19937_64 rng(53);
    std::size_t n = 7, stride = 11;
    auto dense = random_matrix(rng, n);
    std::vector<double> padded(stride * n, -1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) padded[i * stride + j] = dense[i * n + j];
    kernels::min_plus_closure(dense.data(), n, n);
    kernels::min_plus_closure(padded.data(), n, stride);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) CHECK(padded[i * stride + j] == dense[i * n + j]);
}

TEST_CASE("backend dispatch can be forced") {
    auto original = kernels::active_backend();
    kernels::force_backend(kernels::Backend::scalar);
    CHECK(kernels::backend_name(kernels::active_backend()) == "scalar");
    kernels::force_backend(kernels::Backend::avx2);
    if (kernels::avx2_available())
        CHECK(kernels::backend_name(kernels::active_backend()) == "avx2");
    else
        CHECK(kernels::backend_name(kernels::active_backend()) == "scalar");
    kernels::force_backend(original);
}
