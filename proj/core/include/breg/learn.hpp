#pragma once

#include "breg/distribution.hpp"
#include "breg/generator.hpp"
#include "breg/transport.hpp"

namespace breg {

/// Location-scale pushforward family: a fixed base sample z_1..z_m and the
/// affine map g_theta(z) = loc + scale .* z with scale > 0.  P_theta is
/// the uniform discrete distribution on the mapped sample.  The base
/// sample is frozen across all evaluations (common random numbers), so
/// the transport objective is a deterministic function of theta.
struct PushforwardFamily {
    std::vector<Vector> base_sample;

    int dimension() const {
        return base_sample.empty() ? 0 : static_cast<int>(base_sample.front().size());
    }
    int size() const { return static_cast<int>(base_sample.size()); }
};

struct Theta {
    Vector loc;
    Vector scale;  // strictly positive
};

DiscreteDistribution pushforward(const PushforwardFamily& family, const Theta& theta);

/// W_{D_phi}(Q, P_theta) through the certified exact solver.  Both sample
/// sizes are capped at 64 so every evaluation stays on the exact path.
/// Throws std::domain_error when a mapped atom leaves the generator's
/// domain; fit() treats that as a failed step and backtracks.
double objective(const ConvexGenerator& g, const DiscreteDistribution& q,
                 const PushforwardFamily& family, const Theta& theta);

struct FitResult {
    Theta theta;
    Vector trace;             // objective per accepted step, nonincreasing
    std::vector<Theta> path;  // iterate per trace entry; path.front() is theta0
};

/// Gradient descent on (loc, log scale) with central finite-difference
/// gradients (step 1e-5 per coordinate, evaluations in parallel) and a
/// backtracking line search (step halved until the objective decreases,
/// at most 30 halvings; the run stops early when no decrease is found).
FitResult fit(const ConvexGenerator& g, const DiscreteDistribution& q,
              const PushforwardFamily& family, const Theta& theta0, int steps, double lr);

/// Local Lipschitz estimate of the objective around theta: the maximum of
/// |objective(theta') - objective(theta)| / ||theta' - theta|| over
/// `trials` points theta' uniform in the radius-ball (natural loc/scale
/// coordinates).  Requires radius < min(scale) so every probe stays in
/// the family.
double lipschitz_probe(const ConvexGenerator& g, const DiscreteDistribution& q,
                       const PushforwardFamily& family, const Theta& theta, double radius,
                       int trials, std::uint64_t seed);

}  // namespace breg
