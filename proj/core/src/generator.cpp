#include "breg/generator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace breg {

namespace {

void check_size(const ConvexGenerator& g, const Vector& x, const char* what) {
    if (static_cast<int>(x.size()) != g.dimension())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch for generator '" +
                                    g.name() + "'");
}

double xlogx(double v) {
    if (v < 0.0) throw std::domain_error("neg_entropy: negative coordinate");
    return v == 0.0 ? 0.0 : v * std::log(v);
}

// extreme vertex of the delta-interior simplex: d-1 coordinates at delta
Vector delta_vertex(int d, double delta) {
    Vector v(static_cast<std::size_t>(d), delta);
    v.front() = 1.0 - delta * static_cast<double>(d - 1);
    return v;
}

}  // namespace

double ConvexGenerator::value(const Vector& x) const {
    check_size(*this, x, "value");
    return value_(x);
}

Vector ConvexGenerator::gradient(const Vector& x) const {
    check_size(*this, x, "gradient");
    return gradient_(x);
}

Matrix ConvexGenerator::hessian(const Vector& x) const {
    check_size(*this, x, "hessian");
    return hessian_(x);
}

bool ConvexGenerator::contains(const Vector& x) const {
    if (static_cast<int>(x.size()) != dimension_) return false;
    switch (domain_) {
        case Domain::full_space:
            return true;
        case Domain::positive_orthant:
            for (double v : x)
                if (!(v > 0.0)) return false;
            return true;
        case Domain::open_unit_cube:
            for (double v : x)
                if (!(v > 0.0 && v < 1.0)) return false;
            return true;
        case Domain::delta_interior_simplex:
            for (double v : x)
                if (!(v >= delta_)) return false;
            return true;
    }
    return false;
}

Vector ConvexGenerator::closed_form_inverse(const Vector& y) const {
    if (!inverse_) throw std::logic_error("closed_form_inverse: generator has none");
    check_size(*this, y, "closed_form_inverse");
    return inverse_(y);
}

ConvexGenerator make_custom(std::string name, int dimension, ConvexGenerator::ValueFn value,
                            ConvexGenerator::GradFn gradient, ConvexGenerator::HessFn hessian,
                            Domain domain, double grad_bound, double grad_lipschitz, double delta,
                            ConvexGenerator::InverseFn inverse) {
    if (dimension < 1) throw std::invalid_argument("make_custom: dimension must be >= 1");
    if (!value || !gradient || !hessian)
        throw std::invalid_argument("make_custom: value, gradient and hessian are required");
    if (!(grad_bound >= 0.0) || !(grad_lipschitz >= 0.0))
        throw std::invalid_argument(
            "make_custom: explicit nonnegative grad_bound and grad_lipschitz are required");
    if (delta < 0.0 || (dimension > 0 && delta * dimension >= 1.0))
        throw std::invalid_argument("make_custom: delta * d must be < 1");
    ConvexGenerator g;
    g.name_ = std::move(name);
    g.dimension_ = dimension;
    g.domain_ = domain;
    g.delta_ = domain == Domain::delta_interior_simplex ? delta : 0.0;
    g.grad_bound_ = grad_bound;
    g.grad_lipschitz_ = grad_lipschitz;
    g.value_ = std::move(value);
    g.gradient_ = std::move(gradient);
    g.hessian_ = std::move(hessian);
    g.inverse_ = std::move(inverse);
    return g;
}

ConvexGenerator make_builtin(const std::string& name, int dimension, const BuiltinParams& params) {
    if (dimension < 1) throw std::invalid_argument("make_builtin: dimension must be >= 1");
    const int d = dimension;
    const double delta = params.delta;
    if (delta <= 0.0 || delta * d >= 1.0)
        throw std::invalid_argument("make_builtin: delta must satisfy 0 < delta * d < 1");

    if (name == "squared_l2") {
        if (params.mahalanobis_matrix)
            throw std::invalid_argument("make_builtin: matrix parameter only for mahalanobis");
        return make_custom(
            name, d,
            [](const Vector& x) {
                double s = 0.0;
                for (double v : x) s += v * v;
                return s;
            },
            [](const Vector& x) {
                Vector g(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i];
                return g;
            },
            [d](const Vector&) {
                Matrix h = Matrix::identity(d);
                for (int i = 0; i < d; ++i) h(i, i) = 2.0;
                return h;
            },
            Domain::full_space,
            /*M: max ||2x|| over the simplex, attained at a vertex*/ 2.0,
            /*L: ||2I||*/ 2.0, 0.0,
            [](const Vector& y) {
                Vector x(y.size());
                for (std::size_t i = 0; i < y.size(); ++i) x[i] = 0.5 * y[i];
                return x;
            });
    }

    if (name == "neg_entropy") {
        if (params.mahalanobis_matrix)
            throw std::invalid_argument("make_builtin: matrix parameter only for mahalanobis");
        const Vector v = delta_vertex(d, delta);
        double m2 = 0.0;
        for (double vi : v) {
            const double g = std::log(vi) + 1.0;
            m2 += g * g;
        }
        return make_custom(
            name, d,
            [](const Vector& x) {
                double s = 0.0;
                for (double v : x) s += xlogx(v);
                return s;
            },
            [](const Vector& x) {
                Vector g(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) {
                    if (!(x[i] > 0.0))
                        throw std::domain_error("neg_entropy: gradient needs positive coordinates");
                    g[i] = std::log(x[i]) + 1.0;
                }
                return g;
            },
            [d](const Vector& x) {
                Matrix h(d, d);
                for (int i = 0; i < d; ++i) {
                    if (!(x[static_cast<std::size_t>(i)] > 0.0))
                        throw std::domain_error("neg_entropy: hessian needs positive coordinates");
                    h(i, i) = 1.0 / x[static_cast<std::size_t>(i)];
                }
                return h;
            },
            Domain::delta_interior_simplex,
            /*M: ||(log x_i + 1)|| maximized at a vertex of the delta simplex
              (per-coordinate (log x + 1)^2 is convex on (0,1])*/
            std::sqrt(m2),
            /*L: max 1/x_i on the delta simplex*/ 1.0 / delta, delta,
            [](const Vector& y) {
                Vector x(y.size());
                for (std::size_t i = 0; i < y.size(); ++i) x[i] = std::exp(y[i] - 1.0);
                return x;
            });
    }

    if (name == "itakura_saito") {
        if (params.mahalanobis_matrix)
            throw std::invalid_argument("make_builtin: matrix parameter only for mahalanobis");
        const Vector v = delta_vertex(d, delta);
        double m2 = 0.0;
        for (double vi : v) m2 += 1.0 / (vi * vi);
        return make_custom(
            name, d,
            [](const Vector& x) {
                double s = 0.0;
                for (double v : x) {
                    if (!(v > 0.0))
                        throw std::domain_error("itakura_saito: needs positive coordinates");
                    s -= std::log(v);
                }
                return s;
            },
            [](const Vector& x) {
                Vector g(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) {
                    if (!(x[i] > 0.0))
                        throw std::domain_error("itakura_saito: needs positive coordinates");
                    g[i] = -1.0 / x[i];
                }
                return g;
            },
            [d](const Vector& x) {
                Matrix h(d, d);
                for (int i = 0; i < d; ++i) {
                    const double xi = x[static_cast<std::size_t>(i)];
                    if (!(xi > 0.0))
                        throw std::domain_error("itakura_saito: needs positive coordinates");
                    h(i, i) = 1.0 / (xi * xi);
                }
                return h;
            },
            Domain::delta_interior_simplex, std::sqrt(m2),
            /*L: max 1/x_i^2 on the delta simplex*/ 1.0 / (delta * delta), delta,
            [](const Vector& y) {
                Vector x(y.size());
                for (std::size_t i = 0; i < y.size(); ++i) {
                    if (!(y[i] < 0.0))
                        throw std::domain_error(
                            "itakura_saito: gradient image is the negative orthant");
                    x[i] = -1.0 / y[i];
                }
                return x;
            });
    }

    if (name == "mahalanobis") {
        if (!params.mahalanobis_matrix)
            throw std::invalid_argument("make_builtin: mahalanobis requires a matrix");
        const Matrix a = *params.mahalanobis_matrix;
        if (a.rows() != d || a.cols() != d)
            throw std::invalid_argument("make_builtin: mahalanobis matrix has wrong shape");
        if (!a.is_symmetric(1e-10))
            throw std::invalid_argument("make_builtin: mahalanobis matrix must be symmetric");
        if (!cholesky(a))
            throw std::invalid_argument("make_builtin: mahalanobis matrix must be SPD");
        // M = max ||2 A x|| over the simplex: ||Ax|| convex, max at a vertex
        double m = 0.0;
        for (int j = 0; j < d; ++j) {
            double col2 = 0.0;
            for (int i = 0; i < d; ++i) col2 += a(i, j) * a(i, j);
            m = std::max(m, 2.0 * std::sqrt(col2));
        }
        const double l = 2.0 * jacobi_eigen(a).values.front();
        return make_custom(
            name, d,
            [a](const Vector& x) { return dot(x, matvec(a, x)); },
            [a](const Vector& x) {
                Vector g = matvec(a, x);
                for (double& v : g) v *= 2.0;
                return g;
            },
            [a, d](const Vector&) {
                Matrix h(d, d);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) h(i, j) = 2.0 * a(i, j);
                return h;
            },
            Domain::full_space, m, l, 0.0,
            [a](const Vector& y) {
                Vector half = y;
                for (double& v : half) v *= 0.5;
                return solve_spd(a, half);
            });
    }

    if (name == "exponential") {
        if (params.mahalanobis_matrix)
            throw std::invalid_argument("make_builtin: matrix parameter only for mahalanobis");
        const double e = std::exp(1.0);
        return make_custom(
            name, d,
            [](const Vector& x) {
                double s = 0.0;
                for (double v : x) s += std::exp(v);
                return s;
            },
            [](const Vector& x) {
                Vector g(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) g[i] = std::exp(x[i]);
                return g;
            },
            [d](const Vector& x) {
                Matrix h(d, d);
                for (int i = 0; i < d; ++i) h(i, i) = std::exp(x[static_cast<std::size_t>(i)]);
                return h;
            },
            Domain::full_space,
            /*M: sum exp(2 x_i) convex, max at a simplex vertex*/
            std::sqrt(e * e + static_cast<double>(d - 1)),
            /*L: max exp(x_i) on the simplex*/ e, 0.0,
            [](const Vector& y) {
                Vector x(y.size());
                for (std::size_t i = 0; i < y.size(); ++i) {
                    if (!(y[i] > 0.0))
                        throw std::domain_error(
                            "exponential: gradient image is the positive orthant");
                    x[i] = std::log(y[i]);
                }
                return x;
            });
    }

    throw std::invalid_argument("make_builtin: unknown generator '" + name + "'");
}

Vector legendre_gradient_inverse(const ConvexGenerator& g, const Vector& y) {
    if (static_cast<int>(y.size()) != g.dimension())
        throw std::invalid_argument("legendre_gradient_inverse: dimension mismatch");
    if (g.has_closed_form_inverse()) return g.closed_form_inverse(y);

    // damped Newton on r(x) = grad phi(x) - y
    Vector x(y.size(), 0.0);
    if (g.domain() == Domain::positive_orthant || g.domain() == Domain::delta_interior_simplex)
        x.assign(y.size(), 1.0);
    else if (g.domain() == Domain::open_unit_cube)
        x.assign(y.size(), 0.5);

    auto residual = [&](const Vector& p) -> double {
        if (!g.contains(p)) return std::numeric_limits<double>::infinity();
        Vector r = g.gradient(p);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
        return norm_inf(r);
    };

    double res = residual(x);
    for (int step = 0; step < 100; ++step) {
        if (res <= 1e-10) return x;
        Vector r = g.gradient(x);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
        Vector dx;
        try {
            dx = solve_spd(g.hessian(x), r);
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("legendre_gradient_inverse: singular Hessian at an iterate");
        }
        double t = 1.0;
        bool improved = false;
        for (int halving = 0; halving < 60; ++halving) {
            Vector cand(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) cand[i] = x[i] - t * dx[i];
            const double cand_res = residual(cand);
            if (cand_res < res) {
                x = std::move(cand);
                res = cand_res;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if (!improved)
            throw std::runtime_error(
                "legendre_gradient_inverse: line search stalled (is y in the gradient image?)");
    }
    if (res <= 1e-10) return x;
    throw std::runtime_error("legendre_gradient_inverse: no convergence within 100 Newton steps");
}

}  // namespace breg
