#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "semilin/kernels.hpp"

using namespace semilin::kernels;

namespace {

std::vector<double> noise(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("vector backends match the scalar reference bit for bit") {
    std::vector<Backend> others;
    for (Backend b : {Backend::Avx2, Backend::Neon})
        if (backend_available(b)) others.push_back(b);
    if (others.empty()) {
        MESSAGE("no vector backend on this machine");
        return;
    }
    const KernelTable& ref = table(Backend::Scalar);
    std::mt19937_64 rng(7);
    for (Backend b : others) {
        const KernelTable& vec = table(b);
        for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 127u, 1001u}) {
            const auto x = noise(n, rng), y = noise(n, rng), c = noise(n, rng);
            std::vector<double> r1(n), r2(n);

            ref.neg_laplacian_1d(x.data(), r1.data(), n, 16384.0);
            vec.neg_laplacian_1d(x.data(), r2.data(), n, 16384.0);
            CHECK(same_bits(r1, r2));

            r1 = y;
            r2 = y;
            ref.axpy(0.37, x.data(), r1.data(), n);
            vec.axpy(0.37, x.data(), r2.data(), n);
            CHECK(same_bits(r1, r2));

            r1 = y;
            r2 = y;
            ref.xpby(x.data(), -1.3, r1.data(), n);
            vec.xpby(x.data(), -1.3, r2.data(), n);
            CHECK(same_bits(r1, r2));

            ref.waxpy(x.data(), 2.5, y.data(), r1.data(), n);
            vec.waxpy(x.data(), 2.5, y.data(), r2.data(), n);
            CHECK(same_bits(r1, r2));

            r1 = y;
            r2 = y;
            ref.add_product(c.data(), x.data(), r1.data(), n);
            vec.add_product(c.data(), x.data(), r2.data(), n);
            CHECK(same_bits(r1, r2));

            CHECK(ref.max_abs(x.data(), n) == vec.max_abs(x.data(), n));
        }
        for (auto [nx, ny] : {std::pair<std::size_t, std::size_t>{3, 3}, {5, 4}, {8, 8}, {63, 63}, {17, 30}}) {
            const auto x = noise(nx * ny, rng);
            std::vector<double> r1(nx * ny), r2(nx * ny);
            ref.neg_laplacian_2d(x.data(), r1.data(), nx, ny, 4096.0, 900.0);
            vec.neg_laplacian_2d(x.data(), r2.data(), nx, ny, 4096.0, 900.0);
            CHECK(same_bits(r1, r2));
        }
    }
}

TEST_CASE("reductions accumulate left to right") {
    const std::vector<double> x{1e16, 1.0, -1e16, 1.0};
    CHECK(sum(x) == 1.0);
    CHECK(dot(x, std::vector<double>{1, 1, 1, 1}) == 1.0);
}

TEST_CASE("backend override") {
    const Backend saved = active_backend();
    set_active_backend(Backend::Scalar);
    CHECK(active_backend() == Backend::Scalar);
    set_active_backend(saved);
    CHECK_THROWS_AS(table(backend_available(Backend::Neon) ? Backend::Avx2 : Backend::Neon),
                    std::invalid_argument);
}
