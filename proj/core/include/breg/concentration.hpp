#pragma once

#include "breg/generator.hpp"
#include "breg/simplex.hpp"

namespace breg {

/// One-sided tail bound P(stat - E stat >= eps) for the divergence between
/// a d-category distribution and its empirical version from n samples.
/// Closed forms, capped at 1:
///
///   stated,    empirical_first:  exp(-n^2 eps^2 / (4 d M))
///   stated,    true_first:       exp(-n^2 eps^2 / (4 d (M + L)^2))
///   mcdiarmid, empirical_first:  exp(-n eps^2 / (4 M^2))
///   mcdiarmid, true_first:       exp(-n eps^2 / (4 (M + L)^2))
///
/// The mcdiarmid forms follow from the bounded-difference inequality with
/// the per-sample deviations |Z - Z'| <= (2 sqrt2 / n) M and
/// |Y - Y'| <= (2 sqrt2 / n)(M + L).  M and L are the generator's simplex
/// constants and must be finite (delta-interior constants for
/// boundary-singular generators).  Requires d == g.dimension().
double tail_bound(BoundForm form, Direction direction, const ConvexGenerator& g, int n, int d,
                  double eps);

/// Upper bound on the expected divergence:
///   true_first:       M sqrt(d / 4n) + L d / (4n)
///   empirical_first:  M sqrt(d / 4n)
double mean_upper_bound(Direction direction, const ConvexGenerator& g, int n, int d);

/// Ambiguity radius at confidence 1 - delta_conf: the mean upper bound
/// plus the eps* at which tail_bound equals delta_conf (the exponential
/// inverted in closed form).
double radius_for_confidence(Direction direction, const ConvexGenerator& g, int n, int d,
                             double delta_conf, BoundForm form);

struct TailCheckRow {
    double eps;
    double frequency;       // empirical P(stat - mean >= eps) over M replicates
    double stated_bound;
    double mcdiarmid_bound;
};

struct TailCheckResult {
    std::vector<TailCheckRow> rows;
    double mean_statistic;  // replicate mean standing in for E stat
};

/// Simulates M replicates of the divergence statistic and tabulates the
/// empirical tail frequency against both bound forms on the eps grid.
/// Contract: frequency <= mcdiarmid bound + 3 sqrt(freq (1-freq) / M) at
/// every grid point.
TailCheckResult empirical_tail_check(Direction direction, const ConvexGenerator& g,
                                     const SimplexPoint& p, int n, int M,
                                     const Vector& eps_grid, std::uint64_t seed);

}  // namespace breg
