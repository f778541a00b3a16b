#pragma once

#include <cstdint>
#include <optional>

#include "optofb/types.hpp"

namespace optofb {

struct NegativityResult {
    double zeta_en = 0.0;  ///< smaller symplectic eigenvalue of the partial transpose
    double en = 0.0;       ///< logarithmic negativity max(0, -ln(2 zeta_en))
};

/// Logarithmic negativity of a two-mode Gaussian state from its 4x4 covariance
/// matrix. zeta_en = sqrt((s - sqrt(s^2 - 4 det sigma)) / 2) with
/// s = det sigma11 + det sigma22 - 2 det sigma12; the factor 1/2 under the
/// root is fixed by the vacuum-variance-1/2 convention, so that a two-mode
/// squeezed vacuum with parameter r yields En = 2r exactly.
/// Throws NonPhysicalCovariance when s^2 < 4 det sigma beyond tolerance.
NegativityResult log_negativity(const Mat4& sigma_m);

struct SteeringResult {
    double chi_1to2 = 0.0;  ///< det sigma11 / (4 det sigma)
    double st_1to2 = 0.0;   ///< max(0, ln(chi)/2)
    double chi_2to1 = 0.0;
    double st_2to1 = 0.0;
};

/// Gaussian EPR steering in both directions; chi > 1 signals steerability.
SteeringResult steering(const Mat4& sigma_m);

/// Purity Tr(rho^2) = 1 / (4 sqrt(det sigma_m)).
double purity(const Mat4& sigma_m);

/// Gaussian Wigner function over displacement coordinates
/// mu = (Re b1, Im b1, Re b2, Im b2):
///   W(mu) = exp(-mu sigma^{-1} mu^T) / (pi^2 sqrt(det sigma)),
/// normalized so that its integral over mu is 1.
double wigner(const Mat4& sigma_m, const Vec4& mu);

/// Expectation of the two-mode displaced parity operator, (pi^2/4) W(mu);
/// equals +1 at mu = 0 for vacuum.
double displaced_parity(const Mat4& sigma_m, const Vec4& mu);

/// CHSH combination of four displaced-parity correlations,
///   B = P(b1,b2) + P(b1',b2) + P(b1,b2') - P(b1',b2').
/// |B| <= 2 for any local hidden-variable model; quantum mechanics allows up
/// to 2 sqrt(2).
double bell_chsh(const Mat4& sigma_m, const Vec2& beta1, const Vec2& beta2, const Vec2& beta1p,
                 const Vec2& beta2p);
double bell_chsh(const Mat4& sigma_m, const Vec8& displacements);

struct BellConfig {
    int n_starts = 64;            ///< multi-start count (grid seeds plus random)
    double grid_half_width = 1.0; ///< coarse-grid extent per displacement coordinate
    double tol = 1e-9;            ///< simplex convergence tolerance
    int max_iter = 2000;          ///< simplex iteration cap per start
    std::uint64_t seed = 12345;   ///< RNG seed for the random starts
};

struct BellResult {
    double b_max = 0.0;           ///< best |B| found
    Vec8 argmax = Vec8::Zero();   ///< (b1, b2, b1', b2') coordinates at the optimum
    int starts_converged = 0;
    int n_starts = 0;
};

/// Maximizes |B| over all eight displacement coordinates by multi-start
/// Nelder-Mead descent on -|B|: a 3^8 coarse grid over +-grid_half_width is
/// reduced to the 16 best seeds and topped up with uniform random starts.
/// Deterministic for a fixed seed.
BellResult maximize_bell(const Mat4& sigma_m, const BellConfig& config = {});

struct MeasureSet {
    double zeta_en = 0.0;
    double en = 0.0;
    double chi_st_1to2 = 0.0;
    double st_1to2 = 0.0;
    double chi_st_2to1 = 0.0;
    double st_2to1 = 0.0;
    double p_m = 0.0;
    std::optional<BellResult> bell;
};

/// All correlation quantifiers of a two-mode Gaussian state; the Bell
/// optimization is opt-in since it dominates the runtime.
MeasureSet compute_measures(const Mat4& sigma_m, bool with_bell = false,
                            const BellConfig& config = {});

}  // namespace optofb
