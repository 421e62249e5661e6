#pragma once

#include <functional>

#include "breg/common.hpp"
#include "breg/linalg.hpp"

namespace breg {

/// Empirical alpha-quantile with linear interpolation between order
/// statistics (the usual "type 7" rule).  Input must be sorted ascending.
double quantile_sorted(const Vector& sorted, double alpha);

/// Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|.
double ks_two_sample(Vector a, Vector b);

/// One-sample KS distance of a sample against a CDF.
double ks_one_sample(Vector sample, const std::function<double(double)>& cdf);

/// Regularized lower incomplete gamma P(a, x) (series for x < a + 1,
/// Lentz continued fraction otherwise).
double gamma_p(double a, double x);

double chi2_cdf(double x, int k);

/// Inverse chi-square CDF by bisection on gamma_p; used as the analytic
/// reference against Monte Carlo quantiles.
double chi2_quantile(double p, int k);

/// Gauss-Hermite rule for integral f(t) exp(-t^2) dt via Golub-Welsch on
/// the Hermite recurrence (nodes = eigenvalues of the Jacobi matrix,
/// weights from first eigenvector components).
struct GaussHermite {
    Vector nodes;
    Vector weights;
};

GaussHermite gauss_hermite(int n);

}  // namespace breg
