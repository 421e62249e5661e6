#pragma once

#include "breg/generator.hpp"
#include "breg/linalg.hpp"

namespace breg {

/// Independent reference routes used to validate the main solvers.  Each
/// one deliberately avoids the implementation path it is checked against:
/// the transport minimum enumerates basic solutions instead of pivoting,
/// the 1-d value uses the quantile coupling instead of an LP, and the
/// worst-case references use the KL closed form and exhaustive search
/// instead of projected gradients.

/// Exhaustive minimum of the transportation LP: every (m+n-1)-subset of
/// cells that forms a spanning tree is solved for its basic flows; the
/// minimum over the feasible ones is the optimum.  Exponential in m+n,
/// intended for m, n <= 4.
double reference_transport_minimum(const Matrix& cost, const Vector& a, const Vector& b);

/// W_p^p between two distributions on the line via the monotone
/// (quantile) coupling: integrate |F^-1(u) - G^-1(u)|^p over the merged
/// CDF breakpoints.
double reference_wasserstein_1d(std::vector<double> atoms_a, Vector weights_a,
                                std::vector<double> atoms_b, Vector weights_b, double order);

struct KlTiltResult {
    Vector maximizer;
    double value;
    double lambda;
};

/// max <p, c> subject to KL(p || center) <= radius by the exponential
/// tilting closed form p_i proportional to center_i exp(c_i / lambda),
/// with lambda bisected until the constraint is active.  Requires the
/// radius to be below KL(vertex || center) for the best vertex so the
/// constraint binds.
KlTiltResult reference_kl_tilt_worst_case(const Vector& center, const Vector& c, double radius);

/// max <p, c> over the 3-simplex intersected with the KL ball by dense
/// grid search: a coarse pass over (p1, p2) followed by one refinement
/// pass around the incumbent cell.  `steps` grid lines per axis and pass
/// (steps^2 evaluations each).
double reference_grid_worst_case_kl_d3(const Vector& center, const Vector& c, double radius,
                                       double margin, int steps);

}  // namespace breg
