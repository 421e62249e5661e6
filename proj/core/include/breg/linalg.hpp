#pragma once

#include <optional>

#include "breg/common.hpp"

namespace breg {

/// Dense row-major matrix.  Sized for the small problems this library
/// works with (simplex dimensions and desk-scale transport instances);
/// no attempt is made at cache blocking or expression templates.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0);

    static Matrix identity(int n);

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool is_symmetric(double tol = 1e-12) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);
Matrix transpose(const Matrix& a);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
double norm_inf(const Vector& a);

/// Eigendecomposition of a symmetric matrix: A = V diag(values) V^T with
/// orthonormal columns in `vectors`.  Values are sorted descending.
struct SymmetricEigen {
    Vector values;
    Matrix vectors;
};

/// Cyclic Jacobi rotations.  Robust for the small symmetric matrices used
/// here; off-diagonal mass is annihilated to ~1e-15 * ||A||.
SymmetricEigen jacobi_eigen(const Matrix& a);

/// Lower-triangular Cholesky factor of an SPD matrix, or nullopt when a
/// nonpositive pivot shows the matrix is not (numerically) SPD.
std::optional<Matrix> cholesky(const Matrix& a);

/// Solves A x = b for SPD A via Cholesky.  Throws std::invalid_argument
/// when A is not SPD.
Vector solve_spd(const Matrix& a, const Vector& b);

/// Symmetric PSD square root.  Eigenvalues below `rel_tol * max_eigenvalue`
/// are treated as the structural zeros of a rank-deficient matrix and
/// clamped to zero; a genuinely negative eigenvalue beyond that band throws.
Matrix sqrt_psd(const Matrix& a, double rel_tol = 1e-10);

}  // namespace breg
