#pragma once

#include <cmath>
#include <vector>

#include "breg/linalg.hpp"
#include "breg/rng.hpp"
#include "breg/simplex.hpp"

namespace breg::test {

inline Vector random_interior_simplex(Rng& rng, int d, double floor_margin = 0.02) {
    Vector w(static_cast<std::size_t>(d));
    for (double& v : w) v = -std::log(rng.next_unit());
    double s = 0.0;
    for (double v : w) s += v;
    for (double& v : w) v /= s;
    return SimplexPoint::clamped(w, floor_margin).weights();
}

inline Vector random_vector(Rng& rng, int d, double lo, double hi) {
    Vector v(static_cast<std::size_t>(d));
    for (double& x : v) x = rng.next_range(lo, hi);
    return v;
}

// dominant eigenvalue of a (possibly nonsymmetric) matrix by power
// iteration; independent route against the Jacobi-based spectrum
inline double power_iteration_dominant(const Matrix& a, int iters = 20000) {
    Vector v(static_cast<std::size_t>(a.rows()), 1.0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.01 * static_cast<double>(i);
    double lambda = 0.0;
    for (int t = 0; t < iters; ++t) {
        Vector w = matvec(a, v);
        const double n = norm2(w);
        if (n == 0.0) return 0.0;
        for (double& x : w) x /= n;
        lambda = dot(w, matvec(a, w)) / dot(w, w);
        v = std::move(w);
    }
    return lambda;
}

inline double trace_of_power(const Matrix& a, int k) {
    Matrix m = a;
    for (int t = 1; t < k; ++t) m = matmul(m, a);
    double tr = 0.0;
    for (int i = 0; i < m.rows(); ++i) tr += m(i, i);
    return tr;
}

}  // namespace breg::test
