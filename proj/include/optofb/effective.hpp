#pragma once

#include "optofb/model.hpp"
#include "optofb/types.hpp"

namespace optofb {

/// Closed-form parameters of the effective mechanical dynamics obtained by
/// adiabatic elimination of the cavity modes (valid for omega_m >> kappa >>
/// g_o): an effective mechanical two-mode-squeezing coupling g_eff, an
/// effective damping gamma_eff, and a squeezed bath with parameter r.
struct EffectiveModel {
    double g_eff = 0.0;
    double gamma_eff = 0.0;
    double r = 0.0;
    /// Regime ratios reported for inspection, not policed.
    double kappa_over_g_o = 0.0;
    double omega_m_over_kappa = 0.0;
};

/// g_eff = g_o^2 (2 g_p + lambda_f/2) / ((kappa - 2 g_p)(kappa + 2 g_p + lambda_f)),
/// gamma_eff with (2 g_p + lambda_f/2) -> (kappa + lambda_f/2), and
/// r = atanh[(4k(2g_p + l/2) - l(k - 2g_p)) / (4k(k + l/2) + l(k - 2g_p))].
/// At lambda_f = -4 g_p the coupling g_eff vanishes exactly and
/// r reduces to atanh[g_p / (kappa - g_p)].
/// Throws DomainError outside kappa > 2 g_p or when the atanh argument
/// leaves (-1, 1).
EffectiveModel effective_params(const SystemParams& params);

/// Steady second moments of the effective model: per-mode occupation n and
/// cross correlation m = <b1 b2>, from the 2x2 linear system of the moment
/// equations. The mechanical covariance is [[ (n+1/2) I2, m sz ], [m sz,
/// (n+1/2) I2 ]].
struct EffectiveSteadyMoments {
    double occupation = 0.0;
    double cross = 0.0;
};

EffectiveSteadyMoments effective_steady_moments(const SystemParams& params);

struct AnalyticMeasures {
    double zeta_en = 0.0;
    double chi_st = 0.0;
};

/// Closed-form steady-state predictions in the adiabatic regime:
///   zeta_en = (2k + l)^2 / (8k (2g_p + k + l))
///             + gamma_m (2 n_th + 1)(2 g_p + k + l) / (4 g_o^2),
/// and chi_st evaluated from the effective steady moments, which at
/// gamma_m = 0 equals the square of
///   1 - ((k + 2 g_p) l^2 + 8 k g_p l) / (2k (2k + l)^2).
/// Both are stationary in lambda_f at lambda_f = -4 g_p.
AnalyticMeasures analytic_measures(const SystemParams& params);

/// Two-mode squeezed vacuum covariance in the vacuum-variance-1/2 convention:
/// diagonal blocks (cosh 2r / 2) I2, off-diagonal (sinh 2r / 2) diag(1, -1).
Mat4 tms_vacuum_cm(double r);

}  // namespace optofb
