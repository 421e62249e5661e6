#include "breg/learn.hpp"

#include <cmath>
#include <stdexcept>

#include "breg/linalg.hpp"
#include "breg/parallel.hpp"
#include "breg/rng.hpp"

namespace breg {

namespace {

constexpr int kMaxExactSize = 64;
constexpr double kFdStep = 1e-5;

void check_theta(const PushforwardFamily& family, const Theta& theta) {
    const std::size_t d = static_cast<std::size_t>(family.dimension());
    if (theta.loc.size() != d || theta.scale.size() != d)
        throw std::invalid_argument("learn: theta dimension mismatch with base sample");
    for (double s : theta.scale)
        if (!(s > 0.0)) throw std::invalid_argument("learn: scale must be strictly positive");
}

// optimization coordinates: (loc, log scale)
Vector pack(const Theta& theta) {
    Vector eta;
    eta.reserve(theta.loc.size() * 2);
    for (double v : theta.loc) eta.push_back(v);
    for (double s : theta.scale) eta.push_back(std::log(s));
    return eta;
}

Theta unpack(const Vector& eta) {
    const std::size_t d = eta.size() / 2;
    Theta theta;
    theta.loc.assign(eta.begin(), eta.begin() + static_cast<std::ptrdiff_t>(d));
    theta.scale.resize(d);
    for (std::size_t i = 0; i < d; ++i) theta.scale[i] = std::exp(eta[d + i]);
    return theta;
}

}  // namespace

DiscreteDistribution pushforward(const PushforwardFamily& family, const Theta& theta) {
    if (family.base_sample.empty())
        throw std::invalid_argument("pushforward: empty base sample");
    check_theta(family, theta);
    std::vector<Vector> atoms;
    atoms.reserve(family.base_sample.size());
    for (const Vector& z : family.base_sample) {
        Vector a(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) a[i] = theta.loc[i] + theta.scale[i] * z[i];
        atoms.push_back(std::move(a));
    }
    return DiscreteDistribution::uniform_on(std::move(atoms));
}

double objective(const ConvexGenerator& g, const DiscreteDistribution& q,
                 const PushforwardFamily& family, const Theta& theta) {
    if (q.size() > kMaxExactSize || family.size() > kMaxExactSize)
        throw std::invalid_argument("objective: sample sizes are capped at 64 (exact solver)");
    const DiscreteDistribution p_theta = pushforward(family, theta);
    return wasserstein_bregman(g, q, p_theta);
}

FitResult fit(const ConvexGenerator& g, const DiscreteDistribution& q,
              const PushforwardFamily& family, const Theta& theta0, int steps, double lr) {
    if (steps < 1) throw std::invalid_argument("fit: steps must be >= 1");
    if (!(lr > 0.0)) throw std::invalid_argument("fit: lr must be positive");
    check_theta(family, theta0);

    auto eval = [&](const Vector& eta) { return objective(g, q, family, unpack(eta)); };

    Vector eta = pack(theta0);
    const std::size_t dim = eta.size();
    double current = eval(eta);
    Vector trace{current};
    trace.reserve(static_cast<std::size_t>(steps) + 1);
    std::vector<Theta> path{theta0};
    path.reserve(static_cast<std::size_t>(steps) + 1);

    for (int step = 0; step < steps; ++step) {
        // central differences, all 2*dim evaluations independent
        Vector grad(dim, 0.0);
        std::vector<double> shifted(2 * dim, 0.0);
        parallel_for(static_cast<std::int64_t>(2 * dim), [&](std::int64_t k) {
            Vector probe = eta;
            const std::size_t coord = static_cast<std::size_t>(k) / 2;
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            probe[coord] += sign * kFdStep;
            shifted[static_cast<std::size_t>(k)] = eval(probe);
        });
        for (std::size_t i = 0; i < dim; ++i)
            grad[i] = (shifted[2 * i] - shifted[2 * i + 1]) / (2.0 * kFdStep);

        // backtracking: halve until the objective decreases
        double s = lr;
        bool accepted = false;
        for (int halving = 0; halving < 30; ++halving) {
            Vector cand = eta;
            for (std::size_t i = 0; i < dim; ++i) cand[i] -= s * grad[i];
            double value;
            try {
                value = eval(cand);
            } catch (const std::domain_error&) {
                s *= 0.5;  // atom left the generator domain; shrink
                continue;
            }
            if (value < current) {
                eta = std::move(cand);
                current = value;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) break;  // converged to line-search resolution
        trace.push_back(current);
        path.push_back(unpack(eta));
    }
    return FitResult{unpack(eta), std::move(trace), std::move(path)};
}

double lipschitz_probe(const ConvexGenerator& g, const DiscreteDistribution& q,
                       const PushforwardFamily& family, const Theta& theta, double radius,
                       int trials, std::uint64_t seed) {
    if (!(radius > 0.0)) throw std::invalid_argument("lipschitz_probe: radius must be positive");
    if (trials < 1) throw std::invalid_argument("lipschitz_probe: trials must be >= 1");
    check_theta(family, theta);
    for (double s : theta.scale)
        if (radius >= s)
            throw std::invalid_argument("lipschitz_probe: radius must be below min(scale)");

    const double base = objective(g, q, family, theta);
    const std::size_t d = theta.loc.size();
    const std::size_t dim = 2 * d;

    Vector ratios(static_cast<std::size_t>(trials), 0.0);
    parallel_for(trials, [&](std::int64_t t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        // uniform in the radius-ball: normal direction, radial u^(1/dim)
        Vector dir(dim);
        double norm = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            dir[i] = rng.next_normal();
            norm += dir[i] * dir[i];
        }
        norm = std::sqrt(norm);
        const double r = radius * std::pow(rng.next_unit(), 1.0 / static_cast<double>(dim));
        Theta probe = theta;
        double dist2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double dl = r * dir[i] / norm;
            const double ds = r * dir[d + i] / norm;
            probe.loc[i] += dl;
            probe.scale[i] += ds;
            dist2 += dl * dl + ds * ds;
        }
        const double value = objective(g, q, family, probe);
        ratios[static_cast<std::size_t>(t)] = std::abs(value - base) / std::sqrt(dist2);
    });
    double best = 0.0;
    for (double r : ratios) best = std::max(best, r);
    return best;
}

}  // namespace breg
