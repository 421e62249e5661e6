#pragma once

#include <span>
#include <string>
#include <utility>

#include "breg/generator.hpp"

namespace breg {

/// D_phi(x, y) = phi(x) - phi(y) - <grad phi(y), x - y>.
///
/// Negative roundoff down to -1e-9 is clamped to zero; anything below that
/// indicates a non-convex generator and throws.  A non-finite value (for
/// example a zero second-argument weight against a positive first-argument
/// weight under neg_entropy) throws std::domain_error rather than
/// returning infinity.
double bregman_value(const ConvexGenerator& g, const Vector& x, const Vector& y);

struct DivergenceValue {
    double value;
    Vector first_arg;
    Vector second_arg;
    std::string generator;
};

DivergenceValue bregman(const ConvexGenerator& g, const Vector& x, const Vector& y);

/// |D_phi(p, q) - D_phi*(q*, p*)| with p* = grad phi(p), q* = grad phi(q)
/// and the conjugate evaluated through the gradient inverse:
/// phi*(y) = <y, (grad phi)^-1(y)> - phi((grad phi)^-1(y)).
/// Contract: <= 1e-8 for the built-ins on interior points.
double duality_gap(const ConvexGenerator& g, const Vector& p, const Vector& q);

struct BiasVariance {
    double lhs;  // mean of D_phi(sample_i, theta)
    double rhs;  // D_phi(mean, theta) + mean of D_phi(sample_i, mean)
};

/// Decomposition of expected divergence into a bias term plus a spread
/// term.  Exact (to 1e-10) for finite averages under every generator.
BiasVariance bias_variance_check(const ConvexGenerator& g, std::span<const Vector> samples,
                                 const Vector& theta);

enum class ExponentialFamily { bernoulli, poisson_truncated, gaussian_unit_var };

struct FisherOptions {
    int poisson_support_bound = 200;
    int gauss_hermite_nodes = 64;
    /// Central-difference step is fd_step_scale * max(1, |mu|).
    double fd_step_scale = 1e-4;
};

struct FisherCheck {
    double lhs;  // E[ d^2/dmu^2 D_phi(x, mu) ] by finite differences
    double rhs;  // phi''(mu) in closed form
};

/// Fisher information identity for a mean-parametrized exponential family:
/// the expected second mu-derivative of D_phi(x, mu) equals phi''(mu).
/// The expectation is an exact two-point sum (bernoulli), a truncated
/// series (poisson), or Gauss-Hermite quadrature (gaussian).
/// Contract: |lhs - rhs| <= 1e-5.
FisherCheck fisher_identity_check(ExponentialFamily family, double mu,
                                  const FisherOptions& options = {});

}  // namespace breg
