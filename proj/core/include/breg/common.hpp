#pragma once

#include <cstdint>
#include <vector>

namespace breg {

using Vector = std::vector<double>;

/// Argument order of the divergence statistic between a distribution p and
/// its empirical version p_hat.  `empirical_first` is Z = D_phi(p_hat, p),
/// `true_first` is Y = D_phi(p, p_hat).  Only the true-first order gives a
/// set that is convex in the unknown distribution.
enum class Direction { empirical_first, true_first };

/// Algebraic form of a concentration tail bound.  `stated` is the
/// exponential form as originally published for these inequalities;
/// `mcdiarmid` is what the bounded-difference inequality yields from the
/// per-sample deviation bounds.  The mcdiarmid form anchors all empirical
/// validation; the stated form is computed and reported alongside.
enum class BoundForm { stated, mcdiarmid };

}  // namespace breg
