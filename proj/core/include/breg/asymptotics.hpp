#pragma once

#include "breg/generator.hpp"
#include "breg/simplex.hpp"

namespace breg {

/// Spectral description of the limiting law of n * D_phi(p, p_hat_n): the
/// statistic converges to (1/2) * sum_i beta_i Z_i^2 with independent
/// standard normal Z_i, where the beta_i are the nonzero eigenvalues of
/// H Sigma (H the Hessian of phi at p, Sigma the categorical covariance).
struct SpectralLimit {
    Vector eigenvalues;  // beta_1 >= ... >= beta_r > 0
    int rank = 0;
    Matrix hessian;      // H
    Matrix sigma;        // Sigma
};

/// Asymptotic covariance of sqrt(n) (p_hat_n - p) for the categorical
/// MLE: diag(p) - p p^T.  Symmetric PSD with null vector of all ones.
/// Throws on boundary p.
Matrix categorical_sigma(const SimplexPoint& p);

/// Eigenvalues of S^T H S with S the symmetric PSD square root of Sigma,
/// computed by Jacobi rotations.  This equals the nonzero spectrum of
/// H Sigma (S symmetric: S(HS) and (HS)S share nonzero eigenvalues), and
/// the symmetric form keeps the decomposition numerically exact for the
/// rank-deficient Sigma.  Eigenvalues below 1e-10 relative to the largest
/// are the structural zero modes and are dropped.
SpectralLimit limit_spectrum(const ConvexGenerator& g, const SimplexPoint& p);

/// Empirical alpha-quantile of sum_i beta_i Z_i^2 from K seeded Monte
/// Carlo replicates (replicate j uses derive_seed(seed, j)).  Requires
/// K >= 1000.  Reproducible: fixed seed gives a fixed value.
double mc_quantile(const SpectralLimit& spectrum, double alpha, int K, std::uint64_t seed);

/// Draws of the limiting statistic (1/2) sum_i beta_i Z_i^2 itself (note
/// the 1/2, unlike mc_quantile's unscaled sum).
Vector sample_limit_law(const SpectralLimit& spectrum, int K, std::uint64_t seed);

/// M replicates of the scaled divergence n * D_phi(p, p_hat_n) (or the
/// reversed argument order), one seeded stream per replicate; empirical
/// distributions are clamped into the delta-interior simplex for
/// boundary-singular generators.
Vector simulate_scaled_divergence(const ConvexGenerator& g, const SimplexPoint& p, int n, int M,
                                  Direction direction, std::uint64_t seed);

struct LawCheckResult {
    double ks;          // KS distance between simulation and the MC limit CDF
    Vector statistics;  // the M simulated values of n * D_phi
};

/// Simulates the scaled divergence and measures its Kolmogorov-Smirnov
/// distance to the Monte Carlo limit CDF (limit_draws weighted-chi-square
/// draws of the spectrum at the true p).  Requires n >= 100, M >= 1000.
LawCheckResult empirical_law_check(const ConvexGenerator& g, const SimplexPoint& p, int n, int M,
                                   std::uint64_t seed, Direction direction = Direction::true_first,
                                   int limit_draws = 1000000);

}  // namespace breg
