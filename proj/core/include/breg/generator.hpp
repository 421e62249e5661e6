#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "breg/linalg.hpp"

namespace breg {

/// Region on which a generator's value/gradient/Hessian are finite.  For
/// `delta_interior_simplex` the membership test is coordinatewise
/// (x_i >= delta): the functions are well defined on the whole positive
/// orthant, and the simplex sum constraint applies to weight vectors, not
/// to arbitrary evaluation points.  The tag additionally marks generators
/// whose empirical inputs must be clamped before use.
enum class Domain { full_space, positive_orthant, open_unit_cube, delta_interior_simplex };

/// A strictly convex generator phi together with its gradient, Hessian and
/// the two simplex constants every downstream bound depends on:
///   grad_bound      M = max over the (delta-interior) simplex of ||grad phi||_2
///   grad_lipschitz  L = Lipschitz constant of grad phi on the same region.
/// Generators are immutable after construction and safe to share across
/// threads.
class ConvexGenerator {
public:
    using ValueFn = std::function<double(const Vector&)>;
    using GradFn = std::function<Vector(const Vector&)>;
    using HessFn = std::function<Matrix(const Vector&)>;
    using InverseFn = std::function<Vector(const Vector&)>;

    const std::string& name() const { return name_; }
    int dimension() const { return dimension_; }
    Domain domain() const { return domain_; }

    /// delta of the delta-interior simplex; 0 for unrestricted domains.
    double delta() const { return delta_; }

    double value(const Vector& x) const;
    Vector gradient(const Vector& x) const;
    Matrix hessian(const Vector& x) const;

    double grad_bound() const { return grad_bound_; }
    double grad_lipschitz() const { return grad_lipschitz_; }

    /// Coordinatewise membership test for `domain()`; see Domain.
    bool contains(const Vector& x) const;

    /// True for generators whose gradient blows up at the simplex
    /// boundary, i.e. whose empirical inputs must live in the
    /// delta-interior simplex.
    bool needs_clamping() const { return domain_ == Domain::delta_interior_simplex; }

    bool has_closed_form_inverse() const { return static_cast<bool>(inverse_); }
    Vector closed_form_inverse(const Vector& y) const;

    friend ConvexGenerator make_custom(std::string name, int dimension, ValueFn value,
                                       GradFn gradient, HessFn hessian, Domain domain,
                                       double grad_bound, double grad_lipschitz, double delta,
                                       InverseFn inverse);

private:
    ConvexGenerator() = default;

    std::string name_;
    int dimension_ = 0;
    Domain domain_ = Domain::full_space;
    double delta_ = 0.0;
    double grad_bound_ = 0.0;
    double grad_lipschitz_ = 0.0;
    ValueFn value_;
    GradFn gradient_;
    HessFn hessian_;
    InverseFn inverse_;
};

/// Options for the built-in generators.
struct BuiltinParams {
    /// Interior margin for boundary-singular generators (neg_entropy,
    /// itakura_saito); ignored by the others.
    double delta = 1e-6;
    /// SPD matrix for the mahalanobis generator; required there, rejected
    /// elsewhere.
    std::optional<Matrix> mahalanobis_matrix;
};

/// Constructs one of the built-in generators, with closed-form value,
/// gradient, Hessian, gradient inverse and simplex constants M, L:
///
///   squared_l2     phi(x) = ||x||_2^2
///   neg_entropy    phi(x) = sum x_i log x_i            (KL divergence)
///   itakura_saito  phi(x) = -sum log x_i
///   mahalanobis    phi(x) = x^T A x,  A SPD
///   exponential    phi(x) = sum exp(x_i)
///
/// Throws std::invalid_argument on an unknown name, d < 1, a missing or
/// non-SPD mahalanobis matrix, or delta outside [0, 1/d).
ConvexGenerator make_builtin(const std::string& name, int dimension,
                             const BuiltinParams& params = {});

/// Builds a user-defined generator.  The simplex constants must be given
/// explicitly: the library does not estimate them, since a wrong constant
/// silently invalidates every downstream bound.
ConvexGenerator make_custom(std::string name, int dimension, ConvexGenerator::ValueFn value,
                            ConvexGenerator::GradFn gradient, ConvexGenerator::HessFn hessian,
                            Domain domain, double grad_bound, double grad_lipschitz,
                            double delta = 0.0, ConvexGenerator::InverseFn inverse = nullptr);

/// Solves grad phi(x) = y.  Built-ins use their closed form; otherwise a
/// damped Newton iteration on the residual (step halved until the residual
/// norm decreases, at most 60 halvings per step, 100 steps, absolute
/// tolerance 1e-10).  Throws std::runtime_error when the iteration fails
/// to converge, which includes y outside the image of the gradient.
Vector legendre_gradient_inverse(const ConvexGenerator& g, const Vector& y);

}  // namespace breg
