#include "breg/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "breg/divergence.hpp"
#include "breg/parallel.hpp"
#include "breg/rng.hpp"
#include "breg/stats.hpp"

namespace breg {

Matrix categorical_sigma(const SimplexPoint& p) {
    if (!p.interior())
        throw std::domain_error("categorical_sigma: p must be interior to the simplex");
    const int d = p.dimension();
    Matrix sigma(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            sigma(i, j) = (i == j ? p[i] : 0.0) - p[i] * p[j];
    return sigma;
}

SpectralLimit limit_spectrum(const ConvexGenerator& g, const SimplexPoint& p) {
    if (g.dimension() != p.dimension())
        throw std::invalid_argument("limit_spectrum: dimension mismatch");
    const Matrix sigma = categorical_sigma(p);
    const Matrix h = g.hessian(p.weights());
    for (double v : h.data())
        if (!std::isfinite(v))
            throw std::domain_error("limit_spectrum: Hessian not finite at p");

    const Matrix s = sqrt_psd(sigma);
    const Matrix shs = matmul(s, matmul(h, s));  // S symmetric: S^T H S

    SymmetricEigen eig = jacobi_eigen(shs);
    const double lmax = eig.values.empty() ? 0.0 : std::abs(eig.values.front());
    const double cut = 1e-10 * std::max(lmax, 1e-300);

    SpectralLimit out;
    out.hessian = h;
    out.sigma = sigma;
    for (double b : eig.values) {
        if (std::abs(b) <= cut) continue;
        if (b < 0.0)
            throw std::runtime_error("limit_spectrum: negative eigenvalue of S^T H S");
        out.eigenvalues.push_back(b);
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<double>());
    out.rank = static_cast<int>(out.eigenvalues.size());
    if (out.rank == 0)
        throw std::runtime_error("limit_spectrum: spectrum is empty (degenerate instance)");
    return out;
}

double mc_quantile(const SpectralLimit& spectrum, double alpha, int K, std::uint64_t seed) {
    if (K < 1000) throw std::invalid_argument("mc_quantile: K must be >= 1000");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("mc_quantile: alpha outside (0,1)");
    Vector draws(static_cast<std::size_t>(K));
    const Vector& beta = spectrum.eigenvalues;
    parallel_for(K, [&](std::int64_t j) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
        double r = 0.0;
        for (double b : beta) {
            const double z = rng.next_normal();
            r += b * z * z;
        }
        draws[static_cast<std::size_t>(j)] = r;
    });
    std::sort(draws.begin(), draws.end());
    return quantile_sorted(draws, alpha);
}

Vector sample_limit_law(const SpectralLimit& spectrum, int K, std::uint64_t seed) {
    if (K < 1) throw std::invalid_argument("sample_limit_law: K must be >= 1");
    Vector draws(static_cast<std::size_t>(K));
    const Vector& beta = spectrum.eigenvalues;
    parallel_for(K, [&](std::int64_t j) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
        double r = 0.0;
        for (double b : beta) {
            const double z = rng.next_normal();
            r += b * z * z;
        }
        draws[static_cast<std::size_t>(j)] = 0.5 * r;
    });
    return draws;
}

Vector simulate_scaled_divergence(const ConvexGenerator& g, const SimplexPoint& p, int n, int M,
                                  Direction direction, std::uint64_t seed) {
    if (n < 1 || M < 1)
        throw std::invalid_argument("simulate_scaled_divergence: n and M must be positive");
    if (g.dimension() != p.dimension())
        throw std::invalid_argument("simulate_scaled_divergence: dimension mismatch");
    const int d = p.dimension();
    const Vector& weights = p.weights();
    const bool clamp = g.needs_clamping();
    const double delta = g.delta();

    Vector stats(static_cast<std::size_t>(M));
    parallel_for(M, [&](std::int64_t rep) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(rep)));
        std::vector<int> counts(static_cast<std::size_t>(d), 0);
        for (int t = 0; t < n; ++t) ++counts[static_cast<std::size_t>(rng.next_categorical(weights))];
        Vector emp(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            emp[static_cast<std::size_t>(i)] =
                static_cast<double>(counts[static_cast<std::size_t>(i)]) / static_cast<double>(n);
        if (clamp) emp = SimplexPoint::clamped(emp, delta).weights();
        const double div = direction == Direction::true_first
                               ? bregman_value(g, weights, emp)
                               : bregman_value(g, emp, weights);
        stats[static_cast<std::size_t>(rep)] = static_cast<double>(n) * div;
    });
    return stats;
}

LawCheckResult empirical_law_check(const ConvexGenerator& g, const SimplexPoint& p, int n, int M,
                                   std::uint64_t seed, Direction direction, int limit_draws) {
    if (n < 100) throw std::invalid_argument("empirical_law_check: n must be >= 100");
    if (M < 1000) throw std::invalid_argument("empirical_law_check: M must be >= 1000");

    Vector stats = simulate_scaled_divergence(g, p, n, M, direction, seed);
    // disjoint seed stream for the limit sample
    Vector limit = sample_limit_law(limit_spectrum(g, p), limit_draws,
                                    derive_seed(seed, 0x4C494D4954ULL));
    const double ks = ks_two_sample(stats, limit);
    return LawCheckResult{ks, std::move(stats)};
}

}  // namespace breg
