#pragma once

#include <Eigen/Dense>

namespace optofb {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Vec8 = Eigen::Matrix<double, 8, 1>;

/// Pauli z, the quadrature-space signature of a two-mode squeezing coupling.
inline Mat2 pauli_z() {
    Mat2 s;
    s << 1.0, 0.0, 0.0, -1.0;
    return s;
}

/// Symplectic form for n modes in (X1, Y1, X2, Y2, ...) ordering, [X, Y] = i.
template <int N>
Eigen::Matrix<double, 2 * N, 2 * N> symplectic_form() {
    Eigen::Matrix<double, 2 * N, 2 * N> omega = Eigen::Matrix<double, 2 * N, 2 * N>::Zero();
    for (int j = 0; j < N; ++j) {
        omega(2 * j, 2 * j + 1) = 1.0;
        omega(2 * j + 1, 2 * j) = -1.0;
    }
    return omega;
}

template <typename Derived>
auto symmetrized(const Eigen::MatrixBase<Derived>& m) {
    return (0.5 * (m + m.transpose())).eval();
}

/// Smallest eigenvalue of the Hermitian matrix sigma + i*Omega/2. Non-negative
/// (up to tolerance) for every bona-fide covariance matrix.
double bona_fide_margin(const Mat8& sigma);
double bona_fide_margin(const Mat4& sigma);

/// Checks symmetry, the vacuum floor on the diagonal, and the uncertainty
/// relation sigma + i*Omega/2 >= 0 within `tol`.
bool is_physical_cm(const Mat8& sigma, double tol = 1e-9);
bool is_physical_cm(const Mat4& sigma, double tol = 1e-9);

}  // namespace optofb
