#include "optofb/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "optofb/errors.hpp"

namespace optofb {

namespace {

constexpr double kLyapunovResidualTol = 1e-10;

Mat8 covariance_rhs(const Mat8& m, const Mat8& sigma, const Mat8& n) {
    return -m * sigma - sigma * m.transpose() + n;
}

void check_divergence(const Mat8& sigma, double t, double bound) {
    const double peak = sigma.cwiseAbs().maxCoeff();
    if (!(peak <= bound)) {
        std::ostringstream msg;
        msg << "covariance diverged at t = " << t << " (max entry " << peak
            << " exceeds bound " << bound << "); the parameter point is unstable";
        throw DivergenceError(t, msg.str());
    }
}

// One classical RK4 step of the covariance ODE. `drift_at` supplies M(t).
template <typename DriftFn>
Mat8 rk4_step(const DriftFn& drift_at, const Mat8& sigma, double t, double dt, const Mat8& n) {
    const Mat8 m0 = drift_at(t);
    const Mat8 mh = drift_at(t + 0.5 * dt);
    const Mat8 m1 = drift_at(t + dt);
    const Mat8 k1 = covariance_rhs(m0, sigma, n);
    const Mat8 k2 = covariance_rhs(mh, sigma + 0.5 * dt * k1, n);
    const Mat8 k3 = covariance_rhs(mh, sigma + 0.5 * dt * k2, n);
    const Mat8 k4 = covariance_rhs(m1, sigma + dt * k3, n);
    return symmetrized(sigma + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

void check_step_size(const SystemParams& params, double dt) {
    if (!(dt > 0.0)) throw InvalidParams("dt must be positive");
    if (!params.rwa) {
        const double dt_max = M_PI / (20.0 * params.omega_m);
        if (dt > dt_max) {
            std::ostringstream msg;
            msg << "dt = " << dt << " does not resolve the 2*omega_m drift oscillation; "
                << "need dt <= pi/(20 omega_m) = " << dt_max;
            throw InvalidParams(msg.str());
        }
    }
}

}  // namespace

Mat8 drift_matrix(const SystemParams& params, double t) {
    params.validate();
    const double a = params.kappa + 0.5 * params.lambda_f;
    const double g = 2.0 * params.g_p + 0.5 * params.lambda_f;
    const Mat2 sz = pauli_z();

    Mat8 m = Mat8::Zero();
    m.topLeftCorner<4, 4>() = 0.5 * params.gamma_m * Mat4::Identity();
    m.block<2, 2>(4, 4) = a * Mat2::Identity();
    m.block<2, 2>(6, 6) = a * Mat2::Identity();
    m.block<2, 2>(4, 6) = -g * sz;
    m.block<2, 2>(6, 4) = -g * sz;

    Mat2 m12;
    Mat2 m21;
    if (params.rwa) {
        m12 = -params.g_o * Mat2::Identity();
        m21 = params.g_o * Mat2::Identity();
    } else {
        // Quadrature form of the coupling g_o (c_j - c_j^dag e^{2 i omega_m t})
        // and its cavity-side counterpart; averaging over one period recovers
        // the RWA blocks.
        const double c2 = std::cos(2.0 * params.omega_m * t);
        const double s2 = std::sin(2.0 * params.omega_m * t);
        m12 << -(1.0 - c2), s2, s2, -(1.0 + c2);
        m12 *= params.g_o;
        m21 << (1.0 + c2), s2, s2, (1.0 - c2);
        m21 *= params.g_o;
    }
    m.block<2, 2>(0, 4) = m12;
    m.block<2, 2>(2, 6) = m12;
    m.block<2, 2>(4, 0) = m21;
    m.block<2, 2>(6, 2) = m21;
    return m;
}

Mat8 noise_matrix(const SystemParams& params) {
    params.validate();
    const double feedback = 0.5 * params.lambda_f +
                            params.lambda_f * params.lambda_f / (8.0 * params.kappa * params.eta_f);
    const double diag = params.kappa + feedback;
    const Mat2 cross = -feedback * pauli_z();

    Mat8 n = Mat8::Zero();
    n.topLeftCorner<4, 4>() = 0.5 * params.gamma_m * (2.0 * params.n_th + 1.0) * Mat4::Identity();
    n.block<2, 2>(4, 4) = diag * Mat2::Identity();
    n.block<2, 2>(6, 6) = diag * Mat2::Identity();
    n.block<2, 2>(4, 6) = cross;
    n.block<2, 2>(6, 4) = cross;
    return n;
}

Mat8 thermal_vacuum_cm(const SystemParams& params) {
    params.validate();
    Mat8 sigma = 0.5 * Mat8::Identity();
    sigma.topLeftCorner<4, 4>() = (params.n_th + 0.5) * Mat4::Identity();
    return sigma;
}

Mat4 mechanical_block(const Mat8& sigma) { return sigma.topLeftCorner<4, 4>(); }

Mat4 cavity_block(const Mat8& sigma) { return sigma.bottomRightCorner<4, 4>(); }

Mat8 solve_lyapunov(const Mat8& m, const Mat8& n) {
    // vec(M s + s M^T) = (I (x) M + M (x) I) vec(s), column-major vec.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(64, 64);
    for (int c = 0; c < 8; ++c) a.block<8, 8>(8 * c, 8 * c) = m;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) a(8 * i + k, 8 * j + k) += m(i, j);

    Eigen::Map<const Eigen::VectorXd> rhs(n.data(), 64);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible())
        throw SingularSystemError("Lyapunov system is singular; the drift matrix has an "
                                  "eigenvalue pair summing to zero");
    const Eigen::VectorXd x = lu.solve(rhs);
    Mat8 sigma = symmetrized(Eigen::Map<const Mat8>(x.data()));

    const double residual = (m * sigma + sigma * m.transpose() - n).cwiseAbs().maxCoeff();
    if (!(residual < kLyapunovResidualTol)) {
        std::ostringstream msg;
        msg << "Lyapunov solve residual " << residual << " exceeds " << kLyapunovResidualTol;
        throw SingularSystemError(msg.str());
    }
    return sigma;
}

Mat8 steady_covariance(const SystemParams& params) {
    params.validate();
    if (!params.rwa)
        throw InvalidParams("steady_covariance requires rwa = true; for the time-periodic "
                            "dynamics use evolve_to_period_steady");
    const StabilityReport report = check_stability(params);
    if (!report.stable) {
        std::ostringstream msg;
        msg << "no steady state: parameters are unstable (margin " << report.margin << ")";
        throw UnstableSystemError(msg.str());
    }
    return solve_lyapunov(drift_matrix(params), noise_matrix(params));
}

CmTrajectory evolve_covariance(const SystemParams& params, const Mat8& sigma0, double t_end,
                               double dt, const EvolveOptions& options) {
    params.validate();
    check_step_size(params, dt);
    if (!(t_end >= 0.0)) throw InvalidParams("t_end must be non-negative");
    if (options.store_stride < 1) throw InvalidParams("store_stride must be >= 1");

    const Mat8 n = noise_matrix(params);
    const Mat8 m_rwa = drift_matrix(params);
    const auto drift_at = [&](double t) {
        return params.rwa ? m_rwa : drift_matrix(params, options.t0 + t);
    };

    CmTrajectory traj;
    Mat8 sigma = symmetrized(sigma0);
    traj.times.push_back(0.0);
    traj.cms.push_back(sigma);
    if (t_end == 0.0) return traj;

    const long steps = std::max<long>(1, std::lround(t_end / dt));
    const double h = t_end / static_cast<double>(steps);
    for (long k = 0; k < steps; ++k) {
        const double t = h * static_cast<double>(k);
        sigma = rk4_step(drift_at, sigma, t, h, n);
        check_divergence(sigma, options.t0 + t + h, options.divergence_bound);
        if ((k + 1) % options.store_stride == 0 || k + 1 == steps) {
            traj.times.push_back(h * static_cast<double>(k + 1));
            traj.cms.push_back(sigma);
        }
    }
    return traj;
}

PeriodSteadyResult evolve_to_period_steady(const SystemParams& params, const Mat8& sigma0,
                                           double dt, double t_max, double tol,
                                           double divergence_bound) {
    params.validate();
    check_step_size(params, dt);

    const double period = 2.0 * M_PI / params.omega_m;
    const long steps_per_period = std::max<long>(8, std::lround(period / dt));
    const double h = period / static_cast<double>(steps_per_period);
    const long max_periods = std::max<long>(1, std::lround(t_max / period));

    const Mat8 n = noise_matrix(params);
    const Mat8 m_rwa = drift_matrix(params);
    const auto drift_at = [&](double t) { return params.rwa ? m_rwa : drift_matrix(params, t); };

    PeriodSteadyResult result;
    Mat8 sigma = symmetrized(sigma0);
    Mat8 prev_avg = Mat8::Zero();
    bool have_prev = false;
    double t = 0.0;
    for (long p = 0; p < max_periods; ++p) {
        Mat8 acc = Mat8::Zero();
        for (long k = 0; k < steps_per_period; ++k) {
            sigma = rk4_step(drift_at, sigma, t, h, n);
            t += h;
            acc += sigma;
        }
        check_divergence(sigma, t, divergence_bound);
        const Mat8 avg = acc / static_cast<double>(steps_per_period);
        if (have_prev && (avg - prev_avg).cwiseAbs().maxCoeff() < tol) {
            result.period_average = avg;
            result.t_end = t;
            result.converged = true;
            return result;
        }
        prev_avg = avg;
        have_prev = true;
    }
    result.period_average = prev_avg;
    result.t_end = t;
    result.converged = false;
    return result;
}

}  // namespace optofb
