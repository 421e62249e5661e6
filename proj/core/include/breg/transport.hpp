#pragma once

#include "breg/distribution.hpp"
#include "breg/generator.hpp"
#include "breg/linalg.hpp"

namespace breg {

/// C[i][j] = D_phi(x_i, y_j): source atoms fill the first (convex)
/// argument.  Rows are built in parallel.  Throws when an atom is outside
/// the generator's domain.
Matrix bregman_cost_matrix(const ConvexGenerator& g, const DiscreteDistribution& source,
                           const DiscreteDistribution& target);

/// C[i][j] = ||x_i - y_j||_p^p for a finite order p >= 1.
Matrix metric_cost_matrix(double order, const DiscreteDistribution& source,
                          const DiscreteDistribution& target);

struct SolveMethod {
    enum Kind { exact, sinkhorn } kind = exact;
    double epsilon = 0.0;
};

struct TransportPlan {
    Matrix coupling;  // m x n, row sums = source weights, col sums = target weights
    double cost;      // <coupling, cost matrix>
    Vector source_weights;
    Vector target_weights;
    SolveMethod method;
    // exact solves: dual potentials certifying optimality
    // (reduced costs c_ij - u_i - v_j >= -1e-9 on every cell)
    Vector dual_u;
    Vector dual_v;
    // sinkhorn diagnostics
    bool converged = true;
    int iterations = 0;
    double marginal_error_l1 = 0.0;     // of the returned (rounded) coupling
    double iteration_violation_l1 = 0.0;  // of the raw scaling iteration at stop
};

/// Optimal coupling by the transportation simplex: north-west-corner
/// start, Bland's rule, source-side epsilon perturbation against
/// degeneracy (removed after the solve).  Requires m*n <= 10^6.
TransportPlan solve_exact(const Matrix& cost, const DiscreteDistribution& source,
                          const DiscreteDistribution& target);

/// Entropically regularized coupling by log-domain Sinkhorn iterations
/// (max-stabilized log-sum-exp; plain-domain scaling underflows for the
/// small epsilon this library needs).  Iterates until the L1 marginal
/// violation is <= 1e-6 or max_iter rounds; `converged` and
/// `marginal_error_l1` report which.  The returned plan is rounded onto
/// the transportation polytope (overfull marginals scaled down, missing
/// mass spread as a rank-one term), so it is an exactly feasible coupling
/// and its cost sits within an O(epsilon log(mn)) gap above the exact
/// optimum.
TransportPlan solve_sinkhorn(const Matrix& cost, const DiscreteDistribution& source,
                             const DiscreteDistribution& target, double epsilon,
                             int max_iter = 50000);

/// Wasserstein distance of finite order p >= 1: p-th root of the optimal
/// cost under the ground cost ||x - y||_p^p.
double wasserstein_p(const DiscreteDistribution& a, const DiscreteDistribution& b, double order);

/// Optimal-transport value with Bregman ground cost D_phi(x, y), source
/// atoms in the first slot.  Asymmetric in general; equals W_2^2 when phi
/// is the squared Euclidean norm.
double wasserstein_bregman(const ConvexGenerator& g, const DiscreteDistribution& source,
                           const DiscreteDistribution& target);

struct Decomposition {
    double d_term;  // 0.5 * W_2(Q, gradient-pushforward of P)^2
    double p_term;  // coupling-independent correction
    double total;   // d_term + p_term
};

/// Splits W_{D_phi}(Q, P) into a distorted squared Wasserstein distance
/// plus a penalty that does not depend on the coupling:
///   d_term = 0.5 * W_2(Q, grad phi # P)^2
///   p_term = E_Q[phi] - E_P[phi] + E_P[<grad phi(Y), Y>]
///            - 0.5 * (E_Q[||X||^2] + E_P[||grad phi(Y)||^2]).
/// The identity d_term + p_term = W_{D_phi}(Q, P) holds to 1e-8; both
/// sides are computed with independent exact solves.
Decomposition decompose(const ConvexGenerator& g, const DiscreteDistribution& q,
                        const DiscreteDistribution& p_theta);

}  // namespace breg
