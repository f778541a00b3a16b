#pragma once

#include <vector>

#include "optofb/model.hpp"
#include "optofb/types.hpp"

namespace optofb {

/// Drift matrix M of the quadrature Langevin system d psi/dt = -M psi + noise,
/// quadrature order (X_b1, Y_b1, X_b2, Y_b2, X_c1, Y_c1, X_c2, Y_c2).
/// With rwa = false the mechanical/cavity coupling blocks carry the
/// 2*omega_m-periodic counter-rotating terms; with rwa = true they reduce to
/// their one-period time averages -g_o I and +g_o I and `t` is ignored.
Mat8 drift_matrix(const SystemParams& params, double t = 0.0);

/// Diffusion matrix of the covariance equation
///   d sigma/dt = -M sigma - sigma M^T + N.
/// Mechanical block (gamma_m/2)(2 n_th + 1) I4; cavity block carries the
/// feedback-modified vacuum input plus detection noise,
/// diagonal kappa + lambda_f/2 + lambda_f^2/(8 kappa eta_f) with the matching
/// sigma_z cross coupling between the two cavity modes.
Mat8 noise_matrix(const SystemParams& params);

/// Product initial state: mechanical oscillators thermal at n_th, cavities in
/// vacuum. diag((n_th + 1/2) I4, I4/2).
Mat8 thermal_vacuum_cm(const SystemParams& params);

/// Leading 4x4 principal submatrix: covariance of the two mechanical modes.
Mat4 mechanical_block(const Mat8& sigma);

/// Trailing 4x4 principal submatrix: covariance of the two cavity modes.
Mat4 cavity_block(const Mat8& sigma);

/// Solves M sigma + sigma M^T = N by vectorization into a 64x64 linear system.
/// The result is symmetrized; throws SingularSystemError when the Kronecker
/// system is rank deficient or the residual exceeds 1e-10.
Mat8 solve_lyapunov(const Mat8& m, const Mat8& n);

/// Steady-state covariance of the RWA dynamics via the Lyapunov equation.
/// Requires params.rwa = true and check_stability(params).stable.
Mat8 steady_covariance(const SystemParams& params);

struct EvolveOptions {
    double divergence_bound = 1e6;  ///< abort when any |entry| exceeds this
    int store_stride = 1;           ///< keep every stride-th step (plus endpoints)
    double t0 = 0.0;                ///< phase origin of the time-periodic drift
};

struct CmTrajectory {
    std::vector<double> times;
    std::vector<Mat8> cms;
};

/// Fixed-step 4th-order (classical Runge-Kutta) integration of the covariance
/// ODE from sigma0 over [0, t_end]. The step is rounded so the grid lands on
/// t_end exactly; every stored sample is symmetrized. For rwa = false the step
/// must satisfy dt <= pi / (20 omega_m) to resolve the 2*omega_m coefficients.
/// Throws DivergenceError (with the blow-up time) past the divergence bound.
CmTrajectory evolve_covariance(const SystemParams& params, const Mat8& sigma0, double t_end,
                               double dt, const EvolveOptions& options = {});

struct PeriodSteadyResult {
    Mat8 period_average = Mat8::Zero();
    double t_end = 0.0;
    bool converged = false;
};

/// Integrates until the covariance averaged over one mechanical period
/// (2 pi / omega_m) changes by less than `tol` entrywise between consecutive
/// periods. This is the steady-state detector for non-RWA runs, which have no
/// Lyapunov solution; the returned matrix is the converged period average.
PeriodSteadyResult evolve_to_period_steady(const SystemParams& params, const Mat8& sigma0,
                                           double dt, double t_max, double tol = 1e-8,
                                           double divergence_bound = 1e6);

}  // namespace optofb
