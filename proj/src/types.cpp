#include "optofb/types.hpp"

#include <complex>

namespace optofb {

namespace {

template <int N>
double bona_fide_margin_impl(const Eigen::Matrix<double, 2 * N, 2 * N>& sigma) {
    using Cplx = std::complex<double>;
    Eigen::Matrix<Cplx, 2 * N, 2 * N> h =
        sigma.template cast<Cplx>() + Cplx(0.0, 0.5) * symplectic_form<N>().template cast<Cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Cplx, 2 * N, 2 * N>> es(h,
                                                                        Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

template <int N>
bool is_physical_impl(const Eigen::Matrix<double, 2 * N, 2 * N>& sigma, double tol) {
    if (((sigma - sigma.transpose()).cwiseAbs().maxCoeff()) > tol) return false;
    if (sigma.diagonal().minCoeff() < 0.5 - tol) return false;
    return bona_fide_margin_impl<N>(sigma) >= -tol;
}

}  // namespace

double bona_fide_margin(const Mat8& sigma) { return bona_fide_margin_impl<4>(sigma); }
double bona_fide_margin(const Mat4& sigma) { return bona_fide_margin_impl<2>(sigma); }

bool is_physical_cm(const Mat8& sigma, double tol) { return is_physical_impl<4>(sigma, tol); }
bool is_physical_cm(const Mat4& sigma, double tol) { return is_physical_impl<2>(sigma, tol); }

}  // namespace optofb
