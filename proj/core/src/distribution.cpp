#include "breg/distribution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace breg {

namespace {

bool same_atom(const Vector& a, const Vector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > 1e-12) return false;
    return true;
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<Vector> atoms, Vector weights) {
    if (atoms.empty()) throw std::invalid_argument("DiscreteDistribution: no atoms");
    if (atoms.size() != weights.size())
        throw std::invalid_argument("DiscreteDistribution: atom/weight count mismatch");
    const std::size_t d = atoms.front().size();
    if (d == 0) throw std::invalid_argument("DiscreteDistribution: zero-dimensional atoms");

    double sum = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (atoms[k].size() != d) throw std::invalid_argument("DiscreteDistribution: ragged atoms");
        if (weights[k] < -1e-15)
            throw std::invalid_argument("DiscreteDistribution: negative weight");
        sum += weights[k];
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("DiscreteDistribution: weights must sum to 1");

    // merge duplicates by weight addition, drop zero-weight atoms
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (weights[k] <= 0.0) continue;
        bool merged = false;
        for (std::size_t j = 0; j < atoms_.size(); ++j) {
            if (same_atom(atoms_[j], atoms[k])) {
                weights_[j] += weights[k];
                merged = true;
                break;
            }
        }
        if (!merged) {
            atoms_.push_back(std::move(atoms[k]));
            weights_.push_back(weights[k]);
        }
    }
    if (atoms_.empty()) throw std::invalid_argument("DiscreteDistribution: all weights are zero");
    const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    for (double& w : weights_) w /= total;
}

DiscreteDistribution DiscreteDistribution::dirac(Vector atom) {
    std::vector<Vector> atoms;
    atoms.push_back(std::move(atom));
    return DiscreteDistribution(std::move(atoms), Vector{1.0});
}

DiscreteDistribution DiscreteDistribution::uniform_on(std::vector<Vector> atoms) {
    const std::size_t n = atoms.size();
    if (n == 0) throw std::invalid_argument("DiscreteDistribution::uniform_on: no atoms");
    return DiscreteDistribution(std::move(atoms), Vector(n, 1.0 / static_cast<double>(n)));
}

double DiscreteDistribution::expectation(const std::function<double(const Vector&)>& f) const {
    double s = 0.0;
    for (std::size_t k = 0; k < atoms_.size(); ++k) s += weights_[k] * f(atoms_[k]);
    return s;
}

DiscreteDistribution DiscreteDistribution::pushforward(
    const std::function<Vector(const Vector&)>& map) const {
    std::vector<Vector> mapped;
    mapped.reserve(atoms_.size());
    for (const Vector& a : atoms_) mapped.push_back(map(a));
    return DiscreteDistribution(std::move(mapped), weights_);
}

}  // namespace breg
