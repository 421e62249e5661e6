#include "breg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace breg {

double quantile_sorted(const Vector& sorted, double alpha) {
    if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty sample");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("quantile_sorted: alpha outside [0,1]");
    const std::size_t n = sorted.size();
    if (n == 1) return sorted.front();
    const double h = alpha * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double ks_two_sample(Vector a, Vector b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double ks = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        ks = std::max(ks, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return ks;
}

double ks_one_sample(Vector sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f));
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
    }
    return ks;
}

double gamma_p(double a, double x) {
    if (a <= 0.0) throw std::invalid_argument("gamma_p: a must be positive");
    if (x < 0.0) throw std::invalid_argument("gamma_p: x must be nonnegative");
    if (x == 0.0) return 0.0;

    if (x < a + 1.0) {
        // series representation
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int k = 0; k < 500; ++k) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }

    // Lentz continued fraction for Q(a, x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k <= 500; ++k) {
        const double an = -static_cast<double>(k) * (static_cast<double>(k) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    return 1.0 - q;
}

double chi2_cdf(double x, int k) {
    if (k < 1) throw std::invalid_argument("chi2_cdf: k must be >= 1");
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * static_cast<double>(k), 0.5 * x);
}

double chi2_quantile(double p, int k) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("chi2_quantile: p outside (0,1)");
    double lo = 0.0;
    double hi = std::max(10.0, 4.0 * static_cast<double>(k));
    while (chi2_cdf(hi, k) < p) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (chi2_cdf(mid, k) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

GaussHermite gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
    // Jacobi matrix of the Hermite recurrence: off-diagonal sqrt(i/2)
    Matrix j(n, n);
    for (int i = 1; i < n; ++i) {
        const double b = std::sqrt(static_cast<double>(i) / 2.0);
        j(i - 1, i) = b;
        j(i, i - 1) = b;
    }
    SymmetricEigen eig = jacobi_eigen(j);
    GaussHermite rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double sqrt_pi = std::sqrt(std::acos(-1.0));
    // sort ascending by node for a stable rule
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return eig.values[static_cast<std::size_t>(a)] < eig.values[static_cast<std::size_t>(b)];
    });
    for (int i = 0; i < n; ++i) {
        const int c = order[static_cast<std::size_t>(i)];
        rule.nodes[static_cast<std::size_t>(i)] = eig.values[static_cast<std::size_t>(c)];
        const double v0 = eig.vectors(0, c);
        rule.weights[static_cast<std::size_t>(i)] = sqrt_pi * v0 * v0;
    }
    return rule;
}

}  // namespace breg
