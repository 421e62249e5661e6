#pragma once

#include <functional>

#include "breg/common.hpp"

namespace breg {

/// Finite-support probability measure: n atoms in R^d with positive
/// weights on the simplex.  Atoms closer than 1e-12 (max norm) are merged
/// at construction by adding their weights; zero-weight atoms are dropped.
class DiscreteDistribution {
public:
    DiscreteDistribution(std::vector<Vector> atoms, Vector weights);

    static DiscreteDistribution dirac(Vector atom);

    /// Equal weights 1/n on the given atoms.
    static DiscreteDistribution uniform_on(std::vector<Vector> atoms);

    int size() const { return static_cast<int>(atoms_.size()); }
    int dimension() const { return atoms_.empty() ? 0 : static_cast<int>(atoms_.front().size()); }
    const std::vector<Vector>& atoms() const { return atoms_; }
    const Vector& weights() const { return weights_; }

    /// sum_i w_i f(x_i).
    double expectation(const std::function<double(const Vector&)>& f) const;

    /// Image measure under a map applied to every atom, weights unchanged
    /// (coinciding images are merged).
    DiscreteDistribution pushforward(const std::function<Vector(const Vector&)>& map) const;

private:
    std::vector<Vector> atoms_;
    Vector weights_;
};

}  // namespace breg
