#include "breg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace breg {

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::is_symmetric(double tol) const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols() != static_cast<int>(x.size()))
        throw std::invalid_argument("matvec: shape mismatch");
    Vector y(static_cast<std::size_t>(a.rows()), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vector& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

SymmetricEigen jacobi_eigen(const Matrix& input) {
    if (input.rows() != input.cols()) throw std::invalid_argument("jacobi_eigen: not square");
    if (!input.is_symmetric(1e-9)) throw std::invalid_argument("jacobi_eigen: not symmetric");
    const int n = input.rows();
    Matrix a = input;
    // symmetrize exactly so the sweeps see a(i,j) == a(j,i)
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double m = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = a(j, i) = m;
        }
    Matrix v = Matrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return std::sqrt(2.0 * s);
    };

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    const double tol = std::max(scale, 1.0) * 1e-15 * n;

    for (int sweep = 0; sweep < 100 && off_norm() > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= tol / (10.0 * n)) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

    SymmetricEigen out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors = Matrix(n, n);
    for (int c = 0; c < n; ++c) {
        out.values[static_cast<std::size_t>(c)] = a(order[static_cast<std::size_t>(c)],
                                                    order[static_cast<std::size_t>(c)]);
        for (int r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[static_cast<std::size_t>(c)]);
    }
    return out;
}

std::optional<Matrix> cholesky(const Matrix& a) {
    if (a.rows() != a.cols() || !a.is_symmetric(1e-9)) return std::nullopt;
    const int n = a.rows();
    Matrix l(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) return std::nullopt;
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

Vector solve_spd(const Matrix& a, const Vector& b) {
    auto l = cholesky(a);
    if (!l) throw std::invalid_argument("solve_spd: matrix is not SPD");
    const int n = a.rows();
    Vector y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) s -= (*l)(i, k) * y[static_cast<std::size_t>(k)];
        y[static_cast<std::size_t>(i)] = s / (*l)(i, i);
    }
    Vector x(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        double s = y[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k) s -= (*l)(k, i) * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] = s / (*l)(i, i);
    }
    return x;
}

Matrix sqrt_psd(const Matrix& a, double rel_tol) {
    SymmetricEigen eig = jacobi_eigen(a);
    const double lmax = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
    const double cut = rel_tol * std::max(lmax, 1e-300);
    const int n = a.rows();
    Vector sq(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const double ev = eig.values[static_cast<std::size_t>(i)];
        if (ev > cut) {
            sq[static_cast<std::size_t>(i)] = std::sqrt(ev);
        } else if (ev < -std::max(cut, 1e-9 * std::max(lmax, 1.0))) {
            throw std::invalid_argument("sqrt_psd: matrix has a negative eigenvalue");
        }
    }
    Matrix s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = 0.0;
            for (int k = 0; k < n; ++k)
                v += eig.vectors(i, k) * sq[static_cast<std::size_t>(k)] * eig.vectors(j, k);
            s(i, j) = v;
        }
    return s;
}

}  // namespace breg
