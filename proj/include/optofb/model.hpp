#pragma once

#include "optofb/types.hpp"

namespace optofb {

/// Physical parameters of the linearized two-cavity / two-oscillator model.
/// All rates are dimensionless multiples of the cavity dissipation rate kappa,
/// which sets the unit of rate (kappa = 1 by default). Both optomechanical
/// subsystems share the same g_o, omega_m, gamma_m and feedback gain.
struct SystemParams {
    double omega_m = 10.0;   ///< mechanical angular frequency
    double kappa = 1.0;      ///< cavity dissipation rate (rate unit)
    double gamma_m = 1e-5;   ///< mechanical damping rate
    double g_o = 0.05;       ///< linearized optomechanical coupling
    double g_p = 0.3;        ///< nondegenerate parametric downconversion coupling
    double lambda_f = 0.0;   ///< feedback gain (negative values enhance correlations)
    double eta_f = 1.0;      ///< homodyne detection efficiency, in (0, 1]
    double n_th = 0.0;       ///< mean thermal phonon number of the mechanical baths
    bool rwa = true;         ///< drop the 2*omega_m counter-rotating drift terms

    /// Throws InvalidParams when any value is outside its physical domain.
    /// eta_f = 0 is excluded: the detection-noise term diverges as
    /// lambda_f^2 / (8 kappa eta_f); "no feedback" is lambda_f = 0.
    void validate() const;
};

struct StabilityReport {
    bool stable = false;
    /// Minimum real part of the RWA drift-matrix spectrum. May be positive
    /// while `stable` is false: in the closed-form domain (rwa, eta_f = 1,
    /// gamma_m = 0) the feedback-gain cap |lambda_f| < 2 g_p + kappa is
    /// enforced even though it is not an eigenvalue boundary.
    double margin = 0.0;
};

/// Stability gate for the steady-state solver. In the closed-form domain
/// (rwa = true, eta_f = 1, gamma_m = 0) the verdict is
///   kappa > 2 g_p  and  -(2 g_p + kappa) < lambda_f < 2 g_p + kappa;
/// otherwise it requires every eigenvalue of the RWA drift matrix to have a
/// positive real part. The margin is always eigenvalue-based.
StabilityReport check_stability(const SystemParams& params);

}  // namespace optofb
