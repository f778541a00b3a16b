#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace optofb {

struct SimplexResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free Nelder-Mead minimization with the standard reflection /
/// expansion / contraction / shrink coefficients. The initial simplex is
/// x0 plus `step` along each coordinate. Terminates when the value spread
/// across the simplex falls below `tol` (relative to the best value).
template <typename F>
SimplexResult nelder_mead(F&& f, const Eigen::VectorXd& x0, double step, double tol,
                          int max_iter) {
    const int n = static_cast<int>(x0.size());
    using Vertex = std::pair<Eigen::VectorXd, double>;
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    simplex.emplace_back(x0, f(x0));
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd x = x0;
        x[i] += step;
        simplex.emplace_back(x, f(x));
    }
    const auto by_value = [](const Vertex& a, const Vertex& b) { return a.second < b.second; };
    std::sort(simplex.begin(), simplex.end(), by_value);

    SimplexResult result;
    for (result.iterations = 0; result.iterations < max_iter; ++result.iterations) {
        const double f_best = simplex.front().second;
        const double f_worst = simplex.back().second;
        if (std::abs(f_worst - f_best) <= tol * (std::abs(f_best) + tol)) {
            result.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) centroid += simplex[i].first;
        centroid /= static_cast<double>(n);
        const Eigen::VectorXd& worst = simplex.back().first;

        const Eigen::VectorXd xr = centroid + (centroid - worst);
        const double fr = f(xr);
        if (fr < simplex.front().second) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - worst);
            const double fe = f(xe);
            simplex.back() = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr < simplex[n - 1].second) {
            simplex.back() = {xr, fr};
        } else {
            const bool outside = fr < simplex.back().second;
            const Eigen::VectorXd xc =
                outside ? (centroid + 0.5 * (xr - centroid)).eval()
                        : (centroid + 0.5 * (worst - centroid)).eval();
            const double fc = f(xc);
            if (fc < std::min(fr, simplex.back().second)) {
                simplex.back() = {xc, fc};
            } else {
                const Eigen::VectorXd best = simplex.front().first;
                for (int i = 1; i <= n; ++i) {
                    simplex[i].first = best + 0.5 * (simplex[i].first - best);
                    simplex[i].second = f(simplex[i].first);
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(), by_value);
    }
    result.x = simplex.front().first;
    result.value = simplex.front().second;
    return result;
}

}  // namespace optofb
