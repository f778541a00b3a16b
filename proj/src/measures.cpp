#include "optofb/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "optofb/errors.hpp"
#include "optofb/nelder_mead.hpp"

namespace optofb {

namespace {

constexpr double kPhysicalTol = 1e-9;

struct BlockDets {
    double a;  // det sigma11
    double b;  // det sigma22
    double c;  // det sigma12
    double full;
};

BlockDets block_determinants(const Mat4& s) {
    BlockDets d;
    d.a = s.topLeftCorner<2, 2>().determinant();
    d.b = s.bottomRightCorner<2, 2>().determinant();
    d.c = s.topRightCorner<2, 2>().determinant();
    d.full = s.determinant();
    return d;
}

// Cached Wigner/parity evaluator: one inverse and determinant per state.
struct ParityEvaluator {
    Mat4 inv;
    double prefactor;  // 1 / (4 sqrt(det sigma)); parity(0) = purity

    explicit ParityEvaluator(const Mat4& sigma) {
        const double det = sigma.determinant();
        if (!(det > 0.0)) throw NonPhysicalCovariance("covariance determinant is not positive");
        inv = sigma.inverse();
        prefactor = 1.0 / (4.0 * std::sqrt(det));
    }

    double parity(const Vec4& mu) const { return prefactor * std::exp(-mu.dot(inv * mu)); }

    double bell(const Vec8& x) const {
        Vec4 mu;
        mu << x[0], x[1], x[2], x[3];
        const double p11 = parity(mu);
        mu << x[4], x[5], x[2], x[3];
        const double p21 = parity(mu);
        mu << x[0], x[1], x[6], x[7];
        const double p12 = parity(mu);
        mu << x[4], x[5], x[6], x[7];
        const double p22 = parity(mu);
        return p11 + p21 + p12 - p22;
    }
};

}  // namespace

NegativityResult log_negativity(const Mat4& sigma_m) {
    const BlockDets d = block_determinants(sigma_m);
    const double s = d.a + d.b - 2.0 * d.c;
    double disc = s * s - 4.0 * d.full;
    if (disc < -kPhysicalTol) {
        std::ostringstream msg;
        msg << "not a physical two-mode covariance matrix: s^2 - 4 det sigma = " << disc;
        throw NonPhysicalCovariance(msg.str());
    }
    disc = std::max(disc, 0.0);
    const double nu_sq = 0.5 * (s - std::sqrt(disc));
    if (!(nu_sq > 0.0))
        throw NonPhysicalCovariance("partial-transpose symplectic eigenvalue is not positive");
    NegativityResult result;
    result.zeta_en = std::sqrt(nu_sq);
    result.en = std::max(0.0, -std::log(2.0 * result.zeta_en));
    return result;
}

SteeringResult steering(const Mat4& sigma_m) {
    const BlockDets d = block_determinants(sigma_m);
    if (!(d.full > 0.0)) throw SingularSystemError("covariance determinant is not positive");
    SteeringResult result;
    result.chi_1to2 = d.a / (4.0 * d.full);
    result.chi_2to1 = d.b / (4.0 * d.full);
    result.st_1to2 = std::max(0.0, 0.5 * std::log(result.chi_1to2));
    result.st_2to1 = std::max(0.0, 0.5 * std::log(result.chi_2to1));
    return result;
}

double purity(const Mat4& sigma_m) {
    const double det = sigma_m.determinant();
    if (!(det > 0.0)) throw SingularSystemError("covariance determinant is not positive");
    return 1.0 / (4.0 * std::sqrt(det));
}

double wigner(const Mat4& sigma_m, const Vec4& mu) {
    const double det = sigma_m.determinant();
    if (!(det > 0.0)) throw SingularSystemError("covariance determinant is not positive");
    const double quad = mu.dot(sigma_m.inverse() * mu);
    return std::exp(-quad) / (M_PI * M_PI * std::sqrt(det));
}

double displaced_parity(const Mat4& sigma_m, const Vec4& mu) {
    return 0.25 * M_PI * M_PI * wigner(sigma_m, mu);
}

double bell_chsh(const Mat4& sigma_m, const Vec2& beta1, const Vec2& beta2, const Vec2& beta1p,
                 const Vec2& beta2p) {
    Vec8 x;
    x << beta1, beta2, beta1p, beta2p;
    return bell_chsh(sigma_m, x);
}

double bell_chsh(const Mat4& sigma_m, const Vec8& displacements) {
    return ParityEvaluator(sigma_m).bell(displacements);
}

BellResult maximize_bell(const Mat4& sigma_m, const BellConfig& config) {
    if (config.n_starts < 1) throw InvalidParams("n_starts must be >= 1");
    if (!(config.grid_half_width > 0.0)) throw InvalidParams("grid_half_width must be positive");

    const ParityEvaluator eval(sigma_m);
    const auto objective = [&eval](const Eigen::VectorXd& x) {
        return -std::abs(eval.bell(Vec8(x)));
    };

    // 3^8 coarse grid over {-h, 0, +h} per coordinate, keep the best seeds.
    const double h = config.grid_half_width;
    const int grid_seed_count = std::min(config.n_starts, 16);
    std::vector<std::pair<double, Vec8>> graded;
    graded.reserve(6561);
    Vec8 x;
    for (int code = 0; code < 6561; ++code) {
        int rest = code;
        for (int d = 0; d < 8; ++d) {
            x[d] = h * static_cast<double>(rest % 3 - 1);
            rest /= 3;
        }
        graded.emplace_back(-std::abs(eval.bell(x)), x);
    }
    std::partial_sort(graded.begin(), graded.begin() + grid_seed_count, graded.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<Vec8> seeds;
    seeds.reserve(config.n_starts);
    for (int i = 0; i < grid_seed_count; ++i) seeds.push_back(graded[i].second);
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> uniform(-h, h);
    while (static_cast<int>(seeds.size()) < config.n_starts) {
        for (int d = 0; d < 8; ++d) x[d] = uniform(rng);
        seeds.push_back(x);
    }

    BellResult best;
    best.n_starts = static_cast<int>(seeds.size());
    best.b_max = -1.0;
    for (const Vec8& seed : seeds) {
        const SimplexResult run =
            nelder_mead(objective, Eigen::VectorXd(seed), 0.25 * h, config.tol, config.max_iter);
        if (run.converged) ++best.starts_converged;
        if (-run.value > best.b_max) {
            best.b_max = -run.value;
            best.argmax = Vec8(run.x);
        }
    }
    return best;
}

MeasureSet compute_measures(const Mat4& sigma_m, bool with_bell, const BellConfig& config) {
    MeasureSet ms;
    const NegativityResult neg = log_negativity(sigma_m);
    ms.zeta_en = neg.zeta_en;
    ms.en = neg.en;
    const SteeringResult st = steering(sigma_m);
    ms.chi_st_1to2 = st.chi_1to2;
    ms.st_1to2 = st.st_1to2;
    ms.chi_st_2to1 = st.chi_2to1;
    ms.st_2to1 = st.st_2to1;
    ms.p_m = purity(sigma_m);
    if (with_bell) ms.bell = maximize_bell(sigma_m, config);
    return ms;
}

}  // namespace optofb
