#include "breg/divergence.hpp"

#include <cmath>
#include <stdexcept>

#include "breg/stats.hpp"

namespace breg {

double bregman_value(const ConvexGenerator& g, const Vector& x, const Vector& y) {
    if (x.size() != y.size() || static_cast<int>(x.size()) != g.dimension())
        throw std::invalid_argument("bregman: dimension mismatch");
    const double vx = g.value(x);
    const double vy = g.value(y);
    const Vector gy = g.gradient(y);
    double inner = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) inner += gy[i] * (x[i] - y[i]);
    const double d = vx - vy - inner;
    if (!std::isfinite(d))
        throw std::domain_error("bregman: divergence is not finite for these arguments");
    if (d < 0.0) {
        if (d < -1e-9)
            throw std::runtime_error("bregman: negative divergence, generator is not convex");
        return 0.0;  // roundoff at coinciding arguments
    }
    return d;
}

DivergenceValue bregman(const ConvexGenerator& g, const Vector& x, const Vector& y) {
    return DivergenceValue{bregman_value(g, x, y), x, y, g.name()};
}

double duality_gap(const ConvexGenerator& g, const Vector& p, const Vector& q) {
    const double primal = bregman_value(g, p, q);

    const Vector p_star = g.gradient(p);
    const Vector q_star = g.gradient(q);
    auto conjugate = [&](const Vector& y) {
        const Vector x = legendre_gradient_inverse(g, y);
        return dot(y, x) - g.value(x);
    };
    // D_phi*(q*, p*) with grad phi*(p*) = p
    const double conj_q = conjugate(q_star);
    const double conj_p = conjugate(p_star);
    double inner = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) inner += p[i] * (q_star[i] - p_star[i]);
    const double dual = conj_q - conj_p - inner;

    return std::abs(primal - dual);
}

BiasVariance bias_variance_check(const ConvexGenerator& g, std::span<const Vector> samples,
                                 const Vector& theta) {
    if (samples.empty()) throw std::invalid_argument("bias_variance_check: empty sample list");
    const std::size_t d = theta.size();
    Vector mean(d, 0.0);
    for (const Vector& s : samples) {
        if (s.size() != d) throw std::invalid_argument("bias_variance_check: ragged samples");
        for (std::size_t i = 0; i < d; ++i) mean[i] += s[i];
    }
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    for (double& v : mean) v *= inv_n;

    double lhs = 0.0;
    double spread = 0.0;
    for (const Vector& s : samples) {
        lhs += bregman_value(g, s, theta);
        spread += bregman_value(g, s, mean);
    }
    lhs *= inv_n;
    spread *= inv_n;
    return BiasVariance{lhs, bregman_value(g, mean, theta) + spread};
}

namespace {

struct ScalarFamily {
    std::function<double(double)> phi;        // with the 0 log 0 = 0 convention
    std::function<double(double)> phi_prime;
    std::function<double(double)> phi_second;
};

ScalarFamily family_of(ExponentialFamily f) {
    switch (f) {
        case ExponentialFamily::bernoulli:
            return {[](double m) {
                        auto xlx = [](double v) { return v == 0.0 ? 0.0 : v * std::log(v); };
                        return xlx(m) + xlx(1.0 - m);
                    },
                    [](double m) { return std::log(m) - std::log(1.0 - m); },
                    [](double m) { return 1.0 / (m * (1.0 - m)); }};
        case ExponentialFamily::poisson_truncated:
            return {[](double m) { return m == 0.0 ? 0.0 : m * std::log(m) - m; },
                    [](double m) { return std::log(m); },
                    [](double m) { return 1.0 / m; }};
        case ExponentialFamily::gaussian_unit_var:
            return {[](double m) { return 0.5 * m * m; },
                    [](double m) { return m; },
                    [](double) { return 1.0; }};
    }
    throw std::logic_error("family_of: unreachable");
}

}  // namespace

FisherCheck fisher_identity_check(ExponentialFamily family, double mu,
                                  const FisherOptions& options) {
    const ScalarFamily fam = family_of(family);

    const double step = options.fd_step_scale * std::max(1.0, std::abs(mu));
    switch (family) {
        case ExponentialFamily::bernoulli:
            // the centered stencil must stay inside the mean domain
            if (!(mu - step > 0.0 && mu + step < 1.0))
                throw std::domain_error("fisher_identity_check: bernoulli mean too close to 0/1");
            break;
        case ExponentialFamily::poisson_truncated:
            if (!(mu - step > 0.0))
                throw std::domain_error("fisher_identity_check: poisson mean too close to 0");
            break;
        case ExponentialFamily::gaussian_unit_var:
            break;
    }

    // scalar Bregman divergence of the family's generator
    auto div = [&](double x, double m) {
        return fam.phi(x) - fam.phi(m) - fam.phi_prime(m) * (x - m);
    };
    const double h = step;
    auto second_diff = [&](double x) {
        return (div(x, mu + h) - 2.0 * div(x, mu) + div(x, mu - h)) / (h * h);
    };

    double lhs = 0.0;
    switch (family) {
        case ExponentialFamily::bernoulli:
            lhs = (1.0 - mu) * second_diff(0.0) + mu * second_diff(1.0);
            break;
        case ExponentialFamily::poisson_truncated: {
            // pmf built iteratively; the truncation tail is negligible for
            // the mean ranges this check is used with
            double log_pmf = -mu;  // log P(X = 0)
            for (int k = 0; k <= options.poisson_support_bound; ++k) {
                if (k > 0) log_pmf += std::log(mu) - std::log(static_cast<double>(k));
                lhs += std::exp(log_pmf) * second_diff(static_cast<double>(k));
            }
            break;
        }
        case ExponentialFamily::gaussian_unit_var: {
            const GaussHermite rule = gauss_hermite(options.gauss_hermite_nodes);
            const double inv_sqrt_pi = 1.0 / std::sqrt(std::acos(-1.0));
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double x = mu + std::sqrt(2.0) * rule.nodes[i];
                lhs += inv_sqrt_pi * rule.weights[i] * second_diff(x);
            }
            break;
        }
    }
    return FisherCheck{lhs, fam.phi_second(mu)};
}

}  // namespace breg
