#pragma once

#include <memory>
#include <variant>

#include "breg/concentration.hpp"
#include "breg/generator.hpp"
#include "breg/linalg.hpp"
#include "breg/simplex.hpp"

namespace breg {

struct AsymptoticProvenance {
    double alpha;
    int K;
    std::uint64_t seed;
};

struct ConcentrationProvenance {
    double delta_conf;
    BoundForm form;
};

using Provenance = std::variant<AsymptoticProvenance, ConcentrationProvenance>;

/// A Bregman ball of distributions around the (clamped) empirical center:
/// { p in the delta-interior simplex : D_phi(p, center) <= radius }.
/// Membership in the true-first direction is convex, since the divergence
/// is convex in its first argument.
struct AmbiguitySet {
    SimplexPoint center;
    std::shared_ptr<const ConvexGenerator> generator;
    double radius = 0.0;
    Provenance provenance;
    int n = 0;
    int d = 0;
};

/// Large-sample construction: radius = F^-1(alpha) / (2n), where F is the
/// Monte Carlo quantile function of the weighted chi-square limit whose
/// spectrum is evaluated at the plug-in center (the true p is unknown).
/// Requires n = sum(counts) >= 30 and an interior center after clamping.
AmbiguitySet build_asymptotic(std::shared_ptr<const ConvexGenerator> g,
                              const std::vector<long>& counts, double alpha, int K,
                              std::uint64_t seed);

/// Finite-sample construction: radius = radius_for_confidence in the
/// true-first direction (the convex one).
AmbiguitySet build_concentration(std::shared_ptr<const ConvexGenerator> g,
                                 const std::vector<long>& counts, double delta_conf,
                                 BoundForm form);

/// Membership: D_phi ordered per `direction` against the center, within
/// radius + 1e-12.  The empirical-first direction defines a nonconvex set
/// and is supported here only; worst_case_linear rejects it.
bool contains(const AmbiguitySet& set, const SimplexPoint& p,
              Direction direction = Direction::true_first);

struct WorstCase {
    SimplexPoint maximizer;
    double value;       // <maximizer, c>
    double lambda;      // multiplier of the divergence constraint
    double divergence;  // D_phi(maximizer, center)
};

/// Maximizes <p, c> over the ambiguity set by bisection on the Lagrange
/// multiplier: for fixed lambda the strictly concave inner problem
/// max <p,c> - lambda D_phi(p, center) is solved by projected gradient
/// ascent on the delta-interior simplex; lambda is bisected until the
/// divergence constraint is active within 1e-8.  When the unconstrained
/// simplex maximizer (the clamped vertex of the best coordinate) is
/// already feasible it is returned directly with lambda = 0.
WorstCase worst_case_linear(const AmbiguitySet& set, const Vector& c);

struct DrsoResult {
    int best_action = 0;                    // argmin of worst-case loss, lowest index on ties
    std::vector<double> worst_case_values;  // one per action row
};

/// Distributionally robust action selection over a finite action set:
/// row k of `scenario_losses` holds the per-category losses of action k;
/// each action is scored by its worst-case expected loss over the set.
DrsoResult drso_demo(const Matrix& scenario_losses, const AmbiguitySet& set);

}  // namespace breg
