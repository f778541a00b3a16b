#include "optofb/effective.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "optofb/errors.hpp"

namespace optofb {

namespace {

void require_below_threshold(const SystemParams& p) {
    if (!(p.kappa > 2.0 * p.g_p)) {
        std::ostringstream msg;
        msg << "adiabatic elimination requires kappa > 2 g_p (got kappa = " << p.kappa
            << ", g_p = " << p.g_p << ")";
        throw DomainError(msg.str());
    }
}

}  // namespace

EffectiveModel effective_params(const SystemParams& params) {
    params.validate();
    require_below_threshold(params);
    const double k = params.kappa;
    const double l = params.lambda_f;
    const double gp = params.g_p;
    const double denom = (k - 2.0 * gp) * (k + 2.0 * gp + l);
    if (denom == 0.0) throw DomainError("effective model singular: kappa + 2 g_p + lambda_f = 0");

    EffectiveModel model;
    model.g_eff = params.g_o * params.g_o * (2.0 * gp + 0.5 * l) / denom;
    model.gamma_eff = params.g_o * params.g_o * (k + 0.5 * l) / denom;

    const double num = 4.0 * k * (2.0 * gp + 0.5 * l) - l * (k - 2.0 * gp);
    const double den = 4.0 * k * (k + 0.5 * l) + l * (k - 2.0 * gp);
    if (den == 0.0 || std::abs(num) >= std::abs(den)) {
        std::ostringstream msg;
        msg << "squeezing parameter undefined: atanh argument " << num << "/" << den
            << " outside (-1, 1)";
        throw DomainError(msg.str());
    }
    model.r = std::atanh(num / den);
    model.kappa_over_g_o = params.g_o > 0.0 ? k / params.g_o : std::numeric_limits<double>::infinity();
    model.omega_m_over_kappa = params.omega_m / k;
    return model;
}

EffectiveSteadyMoments effective_steady_moments(const SystemParams& params) {
    const EffectiveModel model = effective_params(params);
    const double g = model.g_eff;
    const double ge = model.gamma_eff;
    const double gamma_total = 0.5 * params.gamma_m + ge;
    if (!(gamma_total > std::abs(g)))
        throw DomainError("effective mechanical dynamics is not damped: |g_eff| >= gamma_m/2 + gamma_eff");

    const double s = std::sinh(model.r);
    const double c = std::cosh(model.r);
    const double thermal = params.gamma_m * params.n_th;
    // Steady state of  dn/dt = -2 Gamma n - 2 g m + 2 gamma_eff sinh^2 r + gamma_m n_th,
    //                  dm/dt = -2 Gamma m - g (2n + 1) + 2 gamma_eff sinh r cosh r.
    const double sum = (2.0 * ge * s * (s + c) + thermal - g) / (2.0 * (gamma_total + g));
    const double diff = (-2.0 * ge * s * (c - s) + thermal + g) / (2.0 * (gamma_total - g));

    EffectiveSteadyMoments moments;
    moments.occupation = 0.5 * (sum + diff);
    moments.cross = 0.5 * (sum - diff);
    return moments;
}

AnalyticMeasures analytic_measures(const SystemParams& params) {
    params.validate();
    require_below_threshold(params);
    const double k = params.kappa;
    const double l = params.lambda_f;
    const double gp = params.g_p;
    const double edge = 2.0 * gp + k + l;
    if (edge <= 0.0) throw DomainError("outside the stable region: kappa + 2 g_p + lambda_f <= 0");
    if (params.g_o <= 0.0 && params.gamma_m > 0.0)
        throw DomainError("zeta_en prediction undefined at g_o = 0 with finite mechanical damping");

    AnalyticMeasures result;
    result.zeta_en = (2.0 * k + l) * (2.0 * k + l) / (8.0 * k * edge);
    if (params.gamma_m > 0.0)
        result.zeta_en +=
            params.gamma_m * (2.0 * params.n_th + 1.0) * edge / (4.0 * params.g_o * params.g_o);

    const EffectiveSteadyMoments moments = effective_steady_moments(params);
    const double a = moments.occupation + 0.5;
    const double det = a * a - moments.cross * moments.cross;
    if (!(det > 0.0)) throw DomainError("effective steady state is not a valid Gaussian state");
    result.chi_st = a * a / (4.0 * det * det);
    return result;
}

Mat4 tms_vacuum_cm(double r) {
    if (!(r >= 0.0)) throw DomainError("squeezing parameter must be non-negative");
    const double diag = 0.5 * std::cosh(2.0 * r);
    const double cross = 0.5 * std::sinh(2.0 * r);
    Mat4 sigma = diag * Mat4::Identity();
    sigma.topRightCorner<2, 2>() = cross * pauli_z();
    sigma.bottomLeftCorner<2, 2>() = cross * pauli_z();
    return sigma;
}

}  // namespace optofb
