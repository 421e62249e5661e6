#include "breg/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace breg {

namespace {

constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() {
    state_ += kWeyl;
    return mix(state_);
}

double Rng::next_unit() {
    // 53-bit mantissa, offset by half an ulp: strictly inside (0, 1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

double Rng::next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

int Rng::next_categorical(const Vector& weights) {
    if (weights.empty()) throw std::invalid_argument("next_categorical: empty weights");
    const double u = next_unit();
    double acc = 0.0;
    const int d = static_cast<int>(weights.size());
    for (int i = 0; i < d - 1; ++i) {
        acc += weights[static_cast<std::size_t>(i)];
        if (u < acc) return i;
    }
    return d - 1;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix(seed ^ (kWeyl * (index + 1)));
}

}  // namespace breg
