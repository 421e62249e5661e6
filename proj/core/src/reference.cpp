#include "breg/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace breg {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        const int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent[static_cast<std::size_t>(ra)] = rb;
        return true;
    }
};

}  // namespace

double reference_transport_minimum(const Matrix& cost, const Vector& a, const Vector& b) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(b.size());
    if (cost.rows() != m || cost.cols() != n)
        throw std::invalid_argument("reference_transport_minimum: shape mismatch");
    if (m > 6 || n > 6)
        throw std::invalid_argument("reference_transport_minimum: instance too large");
    const int cells = m * n;
    const int basis_size = m + n - 1;

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> pick(static_cast<std::size_t>(basis_size));
    std::iota(pick.begin(), pick.end(), 0);

    auto evaluate = [&](const std::vector<int>& subset) {
        UnionFind uf(m + n);
        std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(m + n));
        for (int cell : subset) {
            const int i = cell / n;
            const int j = cell % n;
            if (!uf.unite(i, m + j)) return;  // cycle: not a basis
            adj[static_cast<std::size_t>(i)].push_back({m + j, cell});
            adj[static_cast<std::size_t>(m + j)].push_back({i, cell});
        }
        // acyclic with m+n-1 edges over m+n nodes: spanning tree; peel
        // leaves to solve for the basic flows
        std::vector<double> rem(static_cast<std::size_t>(m + n));
        for (int i = 0; i < m; ++i) rem[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) rem[static_cast<std::size_t>(m + j)] = b[static_cast<std::size_t>(j)];
        std::vector<int> degree(static_cast<std::size_t>(m + n));
        std::vector<char> removed(static_cast<std::size_t>(m + n), 0);
        std::vector<int> leaves;
        for (int node = 0; node < m + n; ++node) {
            degree[static_cast<std::size_t>(node)] =
                static_cast<int>(adj[static_cast<std::size_t>(node)].size());
            if (degree[static_cast<std::size_t>(node)] == 1) leaves.push_back(node);
        }
        double total = 0.0;
        while (!leaves.empty()) {
            const int leaf = leaves.back();
            leaves.pop_back();
            if (removed[static_cast<std::size_t>(leaf)]) continue;
            int other = -1, cell = -1;
            for (const auto& [nb, cl] : adj[static_cast<std::size_t>(leaf)]) {
                if (!removed[static_cast<std::size_t>(nb)]) {
                    other = nb;
                    cell = cl;
                    break;
                }
            }
            if (other == -1) break;
            const double f = rem[static_cast<std::size_t>(leaf)];
            if (f < -1e-12) return;  // infeasible basic solution
            total += f * cost(cell / n, cell % n);
            rem[static_cast<std::size_t>(other)] -= f;
            removed[static_cast<std::size_t>(leaf)] = 1;
            if (--degree[static_cast<std::size_t>(other)] == 1) leaves.push_back(other);
        }
        best = std::min(best, total);
    };

    // enumerate all subsets of size m+n-1 in lexicographic order
    while (true) {
        evaluate(pick);
        int k = basis_size - 1;
        while (k >= 0 && pick[static_cast<std::size_t>(k)] == cells - basis_size + k) --k;
        if (k < 0) break;
        ++pick[static_cast<std::size_t>(k)];
        for (int t = k + 1; t < basis_size; ++t)
            pick[static_cast<std::size_t>(t)] = pick[static_cast<std::size_t>(t - 1)] + 1;
    }
    if (!std::isfinite(best))
        throw std::runtime_error("reference_transport_minimum: no feasible basis found");
    return best;
}

double reference_wasserstein_1d(std::vector<double> atoms_a, Vector weights_a,
                                std::vector<double> atoms_b, Vector weights_b, double order) {
    if (atoms_a.size() != weights_a.size() || atoms_b.size() != weights_b.size())
        throw std::invalid_argument("reference_wasserstein_1d: size mismatch");
    auto sort_pair = [](std::vector<double>& x, Vector& w) {
        std::vector<std::size_t> idx(x.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
        std::vector<double> xs(x.size());
        Vector ws(w.size());
        for (std::size_t k = 0; k < idx.size(); ++k) {
            xs[k] = x[idx[k]];
            ws[k] = w[idx[k]];
        }
        x = std::move(xs);
        w = std::move(ws);
    };
    sort_pair(atoms_a, weights_a);
    sort_pair(atoms_b, weights_b);

    double total = 0.0;
    std::size_t i = 0, j = 0;
    double level = 0.0;  // CDF level consumed so far
    double cum_a = weights_a[0], cum_b = weights_b[0];
    while (i < atoms_a.size() && j < atoms_b.size()) {
        const double next = std::min(cum_a, cum_b);
        const double seg = next - level;
        if (seg > 0.0)
            total += seg * std::pow(std::abs(atoms_a[i] - atoms_b[j]), order);
        level = next;
        if (cum_a <= cum_b) {
            ++i;
            if (i < atoms_a.size()) cum_a += weights_a[i];
        } else {
            ++j;
            if (j < atoms_b.size()) cum_b += weights_b[j];
        }
    }
    return total;
}

namespace {

double kl_divergence(const Vector& p, const Vector& q) {
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) kl += p[i] * std::log(p[i] / q[i]);
    }
    return kl;
}

Vector tilt(const Vector& center, const Vector& c, double lambda) {
    const double cmax = *std::max_element(c.begin(), c.end());
    Vector p(center.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) {
        p[i] = center[i] * std::exp((c[i] - cmax) / lambda);
        sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
}

}  // namespace

KlTiltResult reference_kl_tilt_worst_case(const Vector& center, const Vector& c, double radius) {
    if (center.size() != c.size())
        throw std::invalid_argument("reference_kl_tilt_worst_case: size mismatch");
    if (!(radius > 0.0))
        throw std::invalid_argument("reference_kl_tilt_worst_case: radius must be positive");

    auto kl_at = [&](double lambda) { return kl_divergence(tilt(center, c, lambda), center); };

    double lo = 1e-9;
    if (kl_at(lo) <= radius) {
        // constraint slack even for a near-vertex tilt
        const Vector p = tilt(center, c, lo);
        double value = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) value += p[i] * c[i];
        return KlTiltResult{p, value, lo};
    }
    double hi = 1.0;
    while (kl_at(hi) > radius) {
        hi *= 2.0;
        if (hi > 1e12)
            throw std::runtime_error("reference_kl_tilt_worst_case: failed to bracket lambda");
    }
    for (int it = 0; it < 500; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (kl_at(mid) > radius ? lo : hi) = mid;
        if (std::abs(kl_at(hi) - radius) <= 1e-12) break;
    }
    const Vector p = tilt(center, c, hi);
    double value = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) value += p[i] * c[i];
    return KlTiltResult{p, value, hi};
}

double reference_grid_worst_case_kl_d3(const Vector& center, const Vector& c, double radius,
                                       double margin, int steps) {
    if (center.size() != 3 || c.size() != 3)
        throw std::invalid_argument("reference_grid_worst_case_kl_d3: d must be 3");
    if (steps < 10) throw std::invalid_argument("reference_grid_worst_case_kl_d3: steps too small");

    auto kl_at = [&](double p1, double p2) {
        const double p3 = 1.0 - p1 - p2;
        return p1 * std::log(p1 / center[0]) + p2 * std::log(p2 / center[1]) +
               p3 * std::log(p3 / center[2]);
    };
    auto value_at = [&](double p1, double p2) {
        return p1 * c[0] + p2 * c[1] + (1.0 - p1 - p2) * c[2];
    };

    double best = -std::numeric_limits<double>::infinity();

    // coarse product-grid pass over (p1, p2)
    const double span = 1.0 - margin;
    for (int i = 0; i <= steps; ++i) {
        const double p1 = margin + span * static_cast<double>(i) / static_cast<double>(steps);
        for (int j = 0; j <= steps; ++j) {
            const double p2 = margin + span * static_cast<double>(j) / static_cast<double>(steps);
            if (1.0 - p1 - p2 < margin) break;
            if (kl_at(p1, p2) <= radius) best = std::max(best, value_at(p1, p2));
        }
    }
    if (!std::isfinite(best))
        throw std::runtime_error("reference_grid_worst_case_kl_d3: empty feasible grid");

    // slice pass: for p1 fixed, KL is strictly convex in p2, so the
    // feasible p2 set is an interval and the (linear) objective attains
    // its slice maximum at an interval endpoint.  A fine 1-d grid of
    // slices with bisected endpoints resolves the maximizer even where
    // the ball pinches and a product grid stalls.
    const int fine = steps * 20;
    for (int i = 0; i <= fine; ++i) {
        const double p1 = margin + (span - margin) * static_cast<double>(i) /
                          static_cast<double>(fine);
        const double lo = margin, hi = 1.0 - p1 - margin;
        if (hi <= lo) continue;
        // ternary search for the slice minimum of KL
        double a = lo, b = hi;
        for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
            const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
            if (kl_at(p1, m1) < kl_at(p1, m2))
                b = m2;
            else
                a = m1;
        }
        const double p2_min = 0.5 * (a + b);
        if (kl_at(p1, p2_min) > radius) continue;

        auto crossing = [&](double inside, double outside) {
            // kl(inside) <= radius; walk the boundary point in
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (inside + outside);
                (kl_at(p1, mid) <= radius ? inside : outside) = mid;
            }
            return inside;
        };
        const double left = kl_at(p1, lo) <= radius ? lo : crossing(p2_min, lo);
        const double right = kl_at(p1, hi) <= radius ? hi : crossing(p2_min, hi);
        best = std::max({best, value_at(p1, left), value_at(p1, right), value_at(p1, p2_min)});
    }
    return best;
}

}  // namespace breg
