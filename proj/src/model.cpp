#include "optofb/model.hpp"

#include <cmath>
#include <sstream>

#include "optofb/dynamics.hpp"
#include "optofb/errors.hpp"

namespace optofb {

void SystemParams::validate() const {
    std::ostringstream bad;
    if (!(kappa > 0.0)) bad << "kappa must be positive; ";
    if (!(omega_m > 0.0)) bad << "omega_m must be positive; ";
    if (!(gamma_m >= 0.0)) bad << "gamma_m must be non-negative; ";
    if (!(g_o >= 0.0)) bad << "g_o must be non-negative; ";
    if (!(g_p >= 0.0)) bad << "g_p must be non-negative; ";
    if (!(eta_f > 0.0 && eta_f <= 1.0)) bad << "eta_f must lie in (0, 1]; ";
    if (!(n_th >= 0.0)) bad << "n_th must be non-negative; ";
    if (!std::isfinite(lambda_f)) bad << "lambda_f must be finite; ";
    const std::string msg = bad.str();
    if (!msg.empty()) throw InvalidParams("invalid parameters: " + msg);
}

StabilityReport check_stability(const SystemParams& params) {
    params.validate();

    SystemParams rwa_params = params;
    rwa_params.rwa = true;
    const Mat8 m = drift_matrix(rwa_params);
    const Eigen::EigenSolver<Mat8> es(m, /*computeEigenvectors=*/false);

    StabilityReport report;
    report.margin = es.eigenvalues().real().minCoeff();

    const bool closed_form_domain = params.rwa && params.eta_f == 1.0 && params.gamma_m == 0.0;
    if (closed_form_domain) {
        const double cap = 2.0 * params.g_p + params.kappa;
        report.stable =
            params.kappa > 2.0 * params.g_p && -cap < params.lambda_f && params.lambda_f < cap;
    } else {
        report.stable = report.margin > 0.0;
    }
    return report;
}

}  // namespace optofb
