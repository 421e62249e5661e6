#pragma once

#include "breg/common.hpp"

namespace breg {

/// A point of the probability simplex: d nonnegative weights summing to 1
/// (absolute tolerance 1e-12 at construction).  `interior_margin` records
/// the delta of the delta-interior simplex the point is known to satisfy:
/// every weight is >= margin.
class SimplexPoint {
public:
    explicit SimplexPoint(Vector weights, double interior_margin = 0.0);

    /// Clamps an arbitrary nonnegative weight vector into the
    /// delta-interior simplex: w_i <- max(w_i, delta), then renormalize.
    /// Used to bring empirical distributions into the domain of generators
    /// whose gradient is singular at the boundary.
    static SimplexPoint clamped(const Vector& weights, double delta);

    /// Uniform distribution on d categories.
    static SimplexPoint uniform(int d);

    const Vector& weights() const { return weights_; }
    double operator[](int i) const { return weights_[static_cast<std::size_t>(i)]; }
    int dimension() const { return static_cast<int>(weights_.size()); }
    double interior_margin() const { return margin_; }

    /// True when every weight is strictly positive.
    bool interior() const;

private:
    Vector weights_;
    double margin_ = 0.0;
};

/// Euclidean projection onto {p : sum p = 1, p_i >= margin} by the sorted
/// threshold method, O(d log d).  Requires margin * d < 1.
Vector project_to_simplex(const Vector& y, double margin = 0.0);

}  // namespace breg
