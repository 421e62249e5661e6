#include <cmath>

#include "doctest.h"

#include "breg/linalg.hpp"
#include "breg/rng.hpp"
#include "support/test_support.hpp"

using namespace breg;

TEST_SUITE("linalg") {

TEST_CASE("jacobi recovers a known spectrum") {
    // A = diag(3, 1) rotated by 45 degrees
    Matrix a(2, 2);
    a(0, 0) = 2.0;
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    a(1, 1) = 2.0;
    const auto eig = jacobi_eigen(a);
    CHECK(eig.values[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    // eigenvectors orthonormal and satisfy A v = lambda v
    for (int c = 0; c < 2; ++c) {
        Vector v{eig.vectors(0, c), eig.vectors(1, c)};
        const Vector av = matvec(a, v);
        for (int r = 0; r < 2; ++r)
            CHECK(av[static_cast<std::size_t>(r)] ==
                  doctest::Approx(eig.values[static_cast<std::size_t>(c)] *
                                  v[static_cast<std::size_t>(r)])
                      .epsilon(1e-12));
    }
}

TEST_CASE("jacobi reconstructs random symmetric matrices") {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 6);
        Matrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.next_range(-1.0, 1.0);
        const auto eig = jacobi_eigen(a);
        // V diag V^T == A
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0.0;
                for (int k = 0; k < n; ++k)
                    v += eig.vectors(i, k) * eig.values[static_cast<std::size_t>(k)] *
                         eig.vectors(j, k);
                CHECK(std::abs(v - a(i, j)) < 1e-12);
            }
    }
}

TEST_CASE("cholesky accepts SPD and rejects indefinite") {
    Matrix spd(2, 2);
    spd(0, 0) = 4.0;
    spd(0, 1) = spd(1, 0) = 1.0;
    spd(1, 1) = 3.0;
    REQUIRE(cholesky(spd).has_value());
    const Vector x = solve_spd(spd, {1.0, 2.0});
    const Vector b = matvec(spd, x);
    CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b[1] == doctest::Approx(2.0).epsilon(1e-14));

    Matrix indef(2, 2);
    indef(0, 0) = 1.0;
    indef(0, 1) = indef(1, 0) = 2.0;
    indef(1, 1) = 1.0;
    CHECK_FALSE(cholesky(indef).has_value());
}

TEST_CASE("sqrt_psd squares back and zeroes the null mode") {
    // rank-1 PSD: vv^T with v = (1, -1)
    Matrix a(2, 2);
    a(0, 0) = a(1, 1) = 1.0;
    a(0, 1) = a(1, 0) = -1.0;
    const Matrix s = sqrt_psd(a);
    const Matrix ss = matmul(s, s);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(ss(i, j) - a(i, j)) < 1e-12);
}

}  // TEST_SUITE
