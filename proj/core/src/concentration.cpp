#include "breg/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "breg/asymptotics.hpp"

namespace breg {

namespace {

void check_constants(const ConvexGenerator& g, int n, int d) {
    if (n < 1) throw std::invalid_argument("concentration: n must be >= 1");
    if (d != g.dimension())
        throw std::invalid_argument("concentration: d must equal the generator dimension");
    if (!std::isfinite(g.grad_bound()) || !std::isfinite(g.grad_lipschitz()))
        throw std::domain_error("concentration: generator constants are not finite");
}

}  // namespace

double tail_bound(BoundForm form, Direction direction, const ConvexGenerator& g, int n, int d,
                  double eps) {
    check_constants(g, n, d);
    if (!(eps > 0.0)) throw std::invalid_argument("tail_bound: eps must be positive");
    const double m = g.grad_bound();
    const double l = g.grad_lipschitz();
    const double nn = static_cast<double>(n);
    const double dd = static_cast<double>(d);

    double exponent = 0.0;
    if (form == BoundForm::stated) {
        exponent = direction == Direction::empirical_first
                       ? nn * nn * eps * eps / (4.0 * dd * m)
                       : nn * nn * eps * eps / (4.0 * dd * (m + l) * (m + l));
    } else {
        exponent = direction == Direction::empirical_first
                       ? nn * eps * eps / (4.0 * m * m)
                       : nn * eps * eps / (4.0 * (m + l) * (m + l));
    }
    return std::min(1.0, std::exp(-exponent));
}

double mean_upper_bound(Direction direction, const ConvexGenerator& g, int n, int d) {
    check_constants(g, n, d);
    const double m = g.grad_bound();
    const double l = g.grad_lipschitz();
    const double ratio = static_cast<double>(d) / (4.0 * static_cast<double>(n));
    const double base = m * std::sqrt(ratio);
    return direction == Direction::true_first ? base + l * ratio : base;
}

double radius_for_confidence(Direction direction, const ConvexGenerator& g, int n, int d,
                             double delta_conf, BoundForm form) {
    check_constants(g, n, d);
    if (!(delta_conf > 0.0 && delta_conf < 1.0))
        throw std::invalid_argument("radius_for_confidence: delta_conf outside (0,1)");
    const double m = g.grad_bound();
    const double l = g.grad_lipschitz();
    const double nn = static_cast<double>(n);
    const double dd = static_cast<double>(d);
    const double log_term = std::log(1.0 / delta_conf);

    // eps* solving tail_bound(eps*) = delta_conf, from the closed forms
    double eps_star = 0.0;
    if (form == BoundForm::stated) {
        eps_star = direction == Direction::empirical_first
                       ? std::sqrt(4.0 * dd * m * log_term) / nn
                       : 2.0 * (m + l) * std::sqrt(dd * log_term) / nn;
    } else {
        eps_star = direction == Direction::empirical_first
                       ? 2.0 * m * std::sqrt(log_term / nn)
                       : 2.0 * (m + l) * std::sqrt(log_term / nn);
    }
    return mean_upper_bound(direction, g, n, d) + eps_star;
}

TailCheckResult empirical_tail_check(Direction direction, const ConvexGenerator& g,
                                     const SimplexPoint& p, int n, int M,
                                     const Vector& eps_grid, std::uint64_t seed) {
    check_constants(g, n, p.dimension());
    if (M < 1) throw std::invalid_argument("empirical_tail_check: M must be >= 1");
    if (!p.interior()) throw std::domain_error("empirical_tail_check: p must be interior");
    if (eps_grid.empty()) throw std::invalid_argument("empirical_tail_check: empty eps grid");

    Vector stats = simulate_scaled_divergence(g, p, n, M, direction, seed);
    // the statistic is n * D; work on the unscaled divergence
    for (double& s : stats) s /= static_cast<double>(n);
    double mean = 0.0;
    for (double s : stats) mean += s;
    mean /= static_cast<double>(M);

    std::sort(stats.begin(), stats.end());
    TailCheckResult out;
    out.mean_statistic = mean;
    out.rows.reserve(eps_grid.size());
    for (double eps : eps_grid) {
        const double threshold = mean + eps;
        const auto first = std::lower_bound(stats.begin(), stats.end(), threshold);
        const double freq =
            static_cast<double>(stats.end() - first) / static_cast<double>(M);
        out.rows.push_back(TailCheckRow{
            eps, freq, tail_bound(BoundForm::stated, direction, g, n, p.dimension(), eps),
            tail_bound(BoundForm::mcdiarmid, direction, g, n, p.dimension(), eps)});
    }
    return out;
}

}  // namespace breg
