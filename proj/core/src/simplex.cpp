#include "breg/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace breg {

SimplexPoint::SimplexPoint(Vector weights, double interior_margin)
    : weights_(std::move(weights)), margin_(interior_margin) {
    if (weights_.empty()) throw std::invalid_argument("SimplexPoint: empty weight vector");
    if (margin_ < 0.0) throw std::invalid_argument("SimplexPoint: negative interior margin");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) throw std::invalid_argument("SimplexPoint: negative weight");
        if (w < margin_ - 1e-15)
            throw std::invalid_argument("SimplexPoint: weight below the interior margin");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("SimplexPoint: weights do not sum to 1");
}

SimplexPoint SimplexPoint::clamped(const Vector& weights, double delta) {
    if (weights.empty()) throw std::invalid_argument("SimplexPoint::clamped: empty vector");
    if (delta < 0.0 || delta * static_cast<double>(weights.size()) >= 1.0)
        throw std::invalid_argument("SimplexPoint::clamped: delta * d must be < 1");
    Vector w = weights;
    for (double& v : w) {
        if (!(v >= 0.0) && !(v > -1e-12))
            throw std::invalid_argument("SimplexPoint::clamped: negative weight");
        v = std::max(v, delta);
    }
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(sum > 0.0)) throw std::invalid_argument("SimplexPoint::clamped: zero mass");
    for (double& v : w) v /= sum;
    // renormalization can pull a clamped weight slightly below delta again;
    // one more pass fixes it for every practical delta
    double low = *std::min_element(w.begin(), w.end());
    if (low < delta) {
        for (double& v : w) v = std::max(v, delta);
        const double s2 = std::accumulate(w.begin(), w.end(), 0.0);
        for (double& v : w) v /= s2;
    }
    const double margin = std::min(delta, *std::min_element(w.begin(), w.end()));
    return SimplexPoint(std::move(w), margin);
}

SimplexPoint SimplexPoint::uniform(int d) {
    if (d < 1) throw std::invalid_argument("SimplexPoint::uniform: d must be >= 1");
    return SimplexPoint(Vector(static_cast<std::size_t>(d), 1.0 / d), 1.0 / d);
}

bool SimplexPoint::interior() const {
    return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; });
}

Vector project_to_simplex(const Vector& y, double margin) {
    const std::size_t d = y.size();
    if (d == 0) throw std::invalid_argument("project_to_simplex: empty vector");
    const double mass = 1.0 - margin * static_cast<double>(d);
    if (mass <= 0.0) throw std::invalid_argument("project_to_simplex: margin * d must be < 1");

    // shift by the margin and project onto the scaled nonnegative simplex
    Vector u(d);
    for (std::size_t i = 0; i < d; ++i) u[i] = y[i] - margin;
    Vector sorted = u;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cumsum = 0.0;
    double tau = 0.0;
    std::size_t rho = 0;
    for (std::size_t k = 0; k < d; ++k) {
        cumsum += sorted[k];
        const double t = (cumsum - mass) / static_cast<double>(k + 1);
        if (sorted[k] - t > 0.0) {
            rho = k + 1;
            tau = t;
        }
    }
    (void)rho;
    Vector p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = std::max(u[i] - tau, 0.0) + margin;
    // kill the residual roundoff in the sum without disturbing the margin
    double sum = std::accumulate(p.begin(), p.end(), 0.0);
    std::size_t imax = 0;
    for (std::size_t i = 1; i < d; ++i)
        if (p[i] > p[imax]) imax = i;
    p[imax] += 1.0 - sum;
    return p;
}

}  // namespace breg
