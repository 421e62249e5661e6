#include "breg/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "breg/asymptotics.hpp"
#include "breg/divergence.hpp"
#include "breg/parallel.hpp"

namespace breg {

namespace {

// Empirical center from counts, clamped into the delta-interior simplex.
// Clamping applies to every generator here: the spectral plug-in and the
// divergence both need an interior center.
SimplexPoint center_from_counts(const ConvexGenerator& g, const std::vector<long>& counts,
                                long& n_out) {
    if (counts.empty()) throw std::invalid_argument("ambiguity: empty counts");
    long n = 0;
    for (long c : counts) {
        if (c < 0) throw std::invalid_argument("ambiguity: negative count");
        n += c;
    }
    if (n < 30) throw std::invalid_argument("ambiguity: need at least 30 samples");
    long positive_categories = 0;
    for (long c : counts)
        if (c > 0) ++positive_categories;
    if (positive_categories < 2)
        throw std::domain_error("ambiguity: all counts in one category, center is degenerate");
    Vector w(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        w[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
    n_out = n;
    const double delta = g.needs_clamping() ? g.delta() : 1e-6;
    return SimplexPoint::clamped(w, delta);
}

}  // namespace

AmbiguitySet build_asymptotic(std::shared_ptr<const ConvexGenerator> g,
                              const std::vector<long>& counts, double alpha, int K,
                              std::uint64_t seed) {
    if (!g) throw std::invalid_argument("build_asymptotic: null generator");
    if (static_cast<int>(counts.size()) != g->dimension())
        throw std::invalid_argument("build_asymptotic: counts/dimension mismatch");
    long n = 0;
    SimplexPoint center = center_from_counts(*g, counts, n);
    // plug-in spectrum at the empirical center (the true p is unknown)
    const SpectralLimit spectrum = limit_spectrum(*g, center);
    const double radius =
        mc_quantile(spectrum, alpha, K, seed) / (2.0 * static_cast<double>(n));
    AmbiguitySet set{std::move(center), std::move(g), radius,
                     AsymptoticProvenance{alpha, K, seed}, static_cast<int>(n),
                     static_cast<int>(counts.size())};
    return set;
}

AmbiguitySet build_concentration(std::shared_ptr<const ConvexGenerator> g,
                                 const std::vector<long>& counts, double delta_conf,
                                 BoundForm form) {
    if (!g) throw std::invalid_argument("build_concentration: null generator");
    if (static_cast<int>(counts.size()) != g->dimension())
        throw std::invalid_argument("build_concentration: counts/dimension mismatch");
    long n = 0;
    SimplexPoint center = center_from_counts(*g, counts, n);
    const double radius = radius_for_confidence(Direction::true_first, *g, static_cast<int>(n),
                                                g->dimension(), delta_conf, form);
    AmbiguitySet set{std::move(center), std::move(g), radius,
                     ConcentrationProvenance{delta_conf, form}, static_cast<int>(n),
                     static_cast<int>(counts.size())};
    return set;
}

bool contains(const AmbiguitySet& set, const SimplexPoint& p, Direction direction) {
    if (p.dimension() != set.center.dimension())
        throw std::invalid_argument("contains: dimension mismatch");
    const double div = direction == Direction::true_first
                           ? bregman_value(*set.generator, p.weights(), set.center.weights())
                           : bregman_value(*set.generator, set.center.weights(), p.weights());
    return div <= set.radius + 1e-12;
}

namespace {

// max_p <p, c> - lambda * D_phi(p, center) over the delta-interior simplex
// by projected gradient ascent with backtracking; stationarity is the
// projected-gradient residual at unit step.
Vector inner_maximizer(const ConvexGenerator& g, const Vector& center, const Vector& c,
                       double lambda, double margin, Vector start) {
    auto objective = [&](const Vector& p) {
        return dot(p, c) - lambda * bregman_value(g, p, center);
    };
    const Vector grad_center = g.gradient(center);
    auto gradient = [&](const Vector& p) {
        Vector gr = g.gradient(p);
        for (std::size_t i = 0; i < gr.size(); ++i) gr[i] = c[i] - lambda * (gr[i] - grad_center[i]);
        return gr;
    };

    Vector p = std::move(start);
    double fp = objective(p);
    double step = 1.0 / (1.0 + lambda);
    for (int it = 0; it < 20000; ++it) {
        const Vector gr = gradient(p);

        // projected-gradient residual at unit step
        Vector probe(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) probe[i] = p[i] + gr[i];
        probe = project_to_simplex(probe, margin);
        double residual = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            residual = std::max(residual, std::abs(probe[i] - p[i]));
        if (residual <= 1e-10) break;

        bool accepted = false;
        double s = step;
        for (int halving = 0; halving < 60; ++halving) {
            Vector cand(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) cand[i] = p[i] + s * gr[i];
            cand = project_to_simplex(cand, margin);
            const double fc = objective(cand);
            if (fc > fp) {
                p = std::move(cand);
                fp = fc;
                step = s * 2.0;  // allow growth again after a success
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) break;  // no ascent direction at floating-point resolution
    }
    return p;
}

}  // namespace

WorstCase worst_case_linear(const AmbiguitySet& set, const Vector& c) {
    const ConvexGenerator& g = *set.generator;
    const int d = set.center.dimension();
    if (static_cast<int>(c.size()) != d)
        throw std::invalid_argument("worst_case_linear: dimension mismatch");
    if (!(set.radius > 0.0)) throw std::invalid_argument("worst_case_linear: degenerate set");
    const double margin = g.needs_clamping() ? g.delta() : 0.0;
    const Vector& center = set.center.weights();

    auto divergence_at = [&](const Vector& p) { return bregman_value(g, p, center); };

    // unconstrained simplex maximizer: the (clamped) vertex of the best
    // coordinate; if feasible the constraint is slack and we are done
    {
        std::size_t best = 0;
        for (std::size_t i = 1; i < c.size(); ++i)
            if (c[i] > c[best]) best = i;
        Vector vertex(c.size(), margin);
        vertex[best] = 1.0 - margin * static_cast<double>(d - 1);
        if (divergence_at(vertex) <= set.radius)
            return WorstCase{SimplexPoint(vertex, margin), dot(vertex, c), 0.0,
                             divergence_at(vertex)};
    }

    auto solve_at = [&](double lambda, const Vector& start) {
        return inner_maximizer(g, center, c, lambda, margin, start);
    };

    // bracket: divergence of the inner maximizer decreases in lambda
    double lam_lo = 1e-8;
    Vector p_lo = solve_at(lam_lo, center);
    double div_lo = divergence_at(p_lo);
    if (div_lo <= set.radius + 1e-8)
        return WorstCase{SimplexPoint(p_lo, margin), dot(p_lo, c), lam_lo, div_lo};

    double lam_hi = 1.0;
    Vector p_hi = solve_at(lam_hi, p_lo);
    double div_hi = divergence_at(p_hi);
    int growth = 0;
    while (div_hi > set.radius && growth++ < 80) {
        lam_hi *= 2.0;
        p_hi = solve_at(lam_hi, p_hi);
        div_hi = divergence_at(p_hi);
    }
    if (div_hi > set.radius)
        throw std::runtime_error("worst_case_linear: failed to bracket the multiplier");

    Vector p = p_hi;
    double lambda = lam_hi;
    double div = div_hi;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(div - set.radius) <= 1e-8) break;
        const double mid = 0.5 * (lam_lo + lam_hi);
        if (mid == lam_lo || mid == lam_hi) break;  // interval exhausted
        const Vector pm = solve_at(mid, p);
        const double dm = divergence_at(pm);
        if (dm > set.radius) {
            lam_lo = mid;
        } else {
            lam_hi = mid;
            p = pm;
            lambda = mid;
            div = dm;
        }
    }
    return WorstCase{SimplexPoint(p, margin), dot(p, c), lambda, div};
}

DrsoResult drso_demo(const Matrix& scenario_losses, const AmbiguitySet& set) {
    const int actions = scenario_losses.rows();
    if (actions < 1) throw std::invalid_argument("drso_demo: empty action set");
    if (scenario_losses.cols() != set.center.dimension())
        throw std::invalid_argument("drso_demo: losses/dimension mismatch");

    DrsoResult out;
    out.worst_case_values.assign(static_cast<std::size_t>(actions), 0.0);
    parallel_for(actions, [&](std::int64_t k) {
        Vector row(static_cast<std::size_t>(scenario_losses.cols()));
        for (int j = 0; j < scenario_losses.cols(); ++j)
            row[static_cast<std::size_t>(j)] = scenario_losses(static_cast<int>(k), j);
        out.worst_case_values[static_cast<std::size_t>(k)] =
            worst_case_linear(set, row).value;
    });
    out.best_action = static_cast<int>(
        std::min_element(out.worst_case_values.begin(), out.worst_case_values.end()) -
        out.worst_case_values.begin());
    return out;
}

}  // namespace breg
