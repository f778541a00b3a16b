// Acceptance suite: end-to-end checks of the steady-state physics, the
// analytic oracle, the Bell pipeline, and reproducibility. Prints one
// PASS/FAIL line per criterion and exits nonzero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "optofb/dynamics.hpp"
#include "optofb/effective.hpp"
#include "optofb/measures.hpp"
#include "optofb/model.hpp"
#include "optofb/sweep.hpp"
#include "optofb/verify.hpp"

using namespace optofb;

namespace {

SystemParams fig2() {
    SystemParams p;
    p.omega_m = 10.0;
    p.kappa = 1.0;
    p.gamma_m = 1e-5;
    p.g_o = 0.05;
    p.g_p = 0.3;
    p.lambda_f = 0.0;
    p.eta_f = 1.0;
    p.n_th = 0.0;
    p.rwa = true;
    return p;
}

struct Suite {
    int failures = 0;
    int index = 0;

    void run(const std::string& label, const std::function<bool(std::string&)>& body) {
        ++index;
        std::string detail;
        bool pass = false;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            pass = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  criterion %2d  %-28s [%6.2fs]  %s\n", pass ? "PASS" : "FAIL", index,
                    label.c_str(), secs, detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
};

double steady_en(const SystemParams& p) {
    return log_negativity(mechanical_block(steady_covariance(p))).en;
}

MeasureSet steady_measures(const SystemParams& p, bool with_bell = false, std::uint64_t seed = 1) {
    BellConfig cfg;
    cfg.seed = seed;
    return compute_measures(mechanical_block(steady_covariance(p)), with_bell, cfg);
}

/// Bisects f (assumed monotone across the bracket) to the x where it crosses
/// zero, to absolute width `tol`.
double bisect(std::function<double(double)> f, double lo, double hi, double tol) {
    double flo = f(lo);
    for (int k = 0; k < 80 && hi - lo > tol; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo > 0.0) == (fm > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::string fmtnum(double v) {
    std::ostringstream os;
    os.precision(5);
    os << v;
    return os.str();
}

}  // namespace

int main() {
    Suite suite;

    // 1. Entanglement ceiling without feedback: the steady mechanical
    //    entanglement saturates just below ln 2 as g_p approaches kappa/2.
    suite.run("3dB_limit_no_feedback", [&](std::string& detail) {
        const auto t0 = std::chrono::steady_clock::now();
        double best_en = -1.0;
        double best_gp = 0.0;
        for (int i = 0; i < 50; ++i) {
            SystemParams p = fig2();
            p.g_p = 0.01 + (0.495 - 0.01) * i / 49.0;
            if (!check_stability(p).stable) continue;
            const double en = steady_en(p);
            if (en > best_en) {
                best_en = en;
                best_gp = p.g_p;
            }
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        detail = "max En = " + fmtnum(best_en) + " at g_p = " + fmtnum(best_gp) + ", " +
                 fmtnum(secs) + "s";
        return best_en >= 0.62 && best_en <= std::log(2.0) && best_gp >= 0.45 && best_gp < 0.5 &&
               secs < 10.0;
    });

    // 2. No steering without feedback, for negligible mechanical damping.
    suite.run("zero_steering_no_feedback", [&](std::string& detail) {
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
            SystemParams p = fig2();
            p.gamma_m = 1e-8;
            p.g_p = 0.01 + (0.49 - 0.01) * i / 24.0;
            const SteeringResult st = steering(mechanical_block(steady_covariance(p)));
            worst = std::max({worst, st.st_1to2, st.st_2to1});
        }
        detail = "max St over the stable g_p range = " + fmtnum(worst);
        return worst < 1e-6;
    });

    // 3. Feedback optimum: En and St peak at lambda_f = -4 g_p (within one
    //    0.05 grid step) and the state there is nearly pure.
    suite.run("feedback_optimum", [&](std::string& detail) {
        bool pass = true;
        std::ostringstream os;
        for (double gp : {0.1, 0.3, 0.45}) {
            SystemParams p = fig2();
            p.g_p = gp;
            double best_en = -1.0, at_en = 0.0, purity_at_peak = 0.0;
            double best_st = -1.0, at_st = 0.0;
            for (double lf = -4.0 * gp - 0.6; lf <= 0.5 + 1e-9; lf += 0.05) {
                p.lambda_f = lf;
                if (!check_stability(p).stable) continue;
                const Mat4 s = mechanical_block(steady_covariance(p));
                const double en = log_negativity(s).en;
                const double st = steering(s).st_1to2;
                if (en > best_en) {
                    best_en = en;
                    at_en = lf;
                    purity_at_peak = purity(s);
                }
                if (st > best_st) {
                    best_st = st;
                    at_st = lf;
                }
            }
            const bool here = std::abs(at_en + 4.0 * gp) <= 0.05 + 1e-9 &&
                              std::abs(at_st + 4.0 * gp) <= 0.05 + 1e-9 && purity_at_peak > 0.98;
            if (!here) pass = false;
            os << "g_p=" << gp << ": En@" << fmtnum(at_en) << " St@" << fmtnum(at_st)
               << " P=" << fmtnum(purity_at_peak) << "  ";
        }
        detail = os.str();
        return pass;
    });

    // 4. The locked-gain steady state is a two-mode squeezed vacuum with
    //    r = atanh(g_p / (kappa - g_p)).
    suite.run("tms_steady_state", [&](std::string& detail) {
        SystemParams p = fig2();
        p.lambda_f = -1.2;
        p.gamma_m = 1e-8;
        const Mat4 s = mechanical_block(steady_covariance(p));
        const double r = std::atanh(p.g_p / (p.kappa - p.g_p));  // 0.45815
        const double frob = (s - tms_vacuum_cm(r)).norm();
        const double den = std::abs(log_negativity(s).en - 2.0 * r);
        detail = "Frobenius error = " + fmtnum(frob) + ", |En - 2r| = " + fmtnum(den);
        return frob < 1e-2 && den < 2e-2;
    });

    // 5. Analytic-numeric oracle over random stable points in the adiabatic
    //    sampling box.
    suite.run("analytic_numeric_oracle", [&](std::string& detail) {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937_64 rng(1234);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double worst_z = 0.0;
        double worst_c = 0.0;
        int accepted = 0;
        while (accepted < 50) {
            SystemParams p = fig2();
            p.g_p = 0.05 + 0.35 * u01(rng);
            const double lo = -4.0 * p.g_p - 0.3;
            p.lambda_f = lo + (0.5 - lo) * u01(rng);
            if (p.lambda_f <= -(2.0 * p.g_p + p.kappa) + 0.05) continue;
            if (!check_stability(p).stable) continue;
            ++accepted;
            const Mat4 s = mechanical_block(steady_covariance(p));
            const AnalyticMeasures pred = analytic_measures(p);
            worst_z = std::max(worst_z, std::abs(log_negativity(s).zeta_en - pred.zeta_en));
            worst_c = std::max(worst_c, std::abs(steering(s).chi_1to2 - pred.chi_st));
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        detail = "worst |zeta-pred| = " + fmtnum(worst_z) + ", worst |chi-pred| = " +
                 fmtnum(worst_c) + ", " + fmtnum(secs) + "s";
        return worst_z < 5e-3 && worst_c < 5e-3 && secs < 30.0;
    });

    // 6. Bell bounds and the nonlocality hierarchy across swept states.
    suite.run("bell_hierarchy_and_bounds", [&](std::string& detail) {
        const double cirelson = 2.0 * std::sqrt(2.0) + 1e-6;
        bool pass = true;
        int bell_points = 0;

        const BellResult vac = maximize_bell(0.5 * Mat4::Identity());
        if (std::abs(vac.b_max - 2.0) > 1e-6) pass = false;

        std::vector<MeasureSet> states;
        {
            SweepSpec spec;
            spec.axis = SweepAxis::lambda_f;
            spec.start = -1.75;
            spec.stop = 0.25;
            spec.n_points = 21;
            spec.base = fig2();
            spec.base.g_p = 0.4;
            spec.with_bell = true;
            spec.bell.n_starts = 32;
            spec.seed = 99;
            for (const SweepRow& row : run_sweep(spec))
                if (row.ok) states.push_back(row.measures);
        }
        for (double nth : {0.0, 2.0, 5.0, 8.0}) {
            SystemParams p = fig2();
            p.g_p = 0.49;
            p.lambda_f = -1.96;
            p.n_th = nth;
            states.push_back(steady_measures(p, true, 7));
        }

        double seen_max = 0.0;
        for (const MeasureSet& m : states) {
            if (!m.bell) continue;
            ++bell_points;
            const double b = m.bell->b_max;
            seen_max = std::max(seen_max, b);
            if (!(b >= 0.0 && b <= cirelson)) pass = false;
            if (b > 2.0 + 1e-9 && !(m.st_1to2 > 0.0 || m.st_2to1 > 0.0)) pass = false;
            if ((m.st_1to2 > 0.0 || m.st_2to1 > 0.0) && !(m.en > 0.0)) pass = false;
        }
        detail = fmtnum(bell_points) + " Bell-optimized states, max B = " + fmtnum(seen_max) +
                 ", vacuum B = " + fmtnum(vac.b_max);
        return pass && bell_points >= 20;
    });

    // 7. Thermal robustness ordering at the near-threshold operating point:
    //    Bell nonlocality dies first, then steering, then entanglement.
    suite.run("thermal_robustness_ordering", [&](std::string& detail) {
        SystemParams base = fig2();
        base.g_p = 0.49;
        base.lambda_f = -1.96;

        const auto bell_excess = [&](double nth) {
            SystemParams p = base;
            p.n_th = nth;
            BellConfig cfg;
            cfg.seed = 11;
            return maximize_bell(mechanical_block(steady_covariance(p)), cfg).b_max - 2.0;
        };
        const auto st_value = [&](double nth) {
            SystemParams p = base;
            p.n_th = nth;
            const SteeringResult st = steering(mechanical_block(steady_covariance(p)));
            return std::log(st.chi_1to2);  // sign change at the steering threshold
        };
        const auto en_value = [&](double nth) {
            SystemParams p = base;
            p.n_th = nth;
            return 0.5 - log_negativity(mechanical_block(steady_covariance(p))).zeta_en;
        };

        // bracket each threshold on a coarse scan, then bisect
        double bell_hi = -1.0;
        for (double nth = 1.0; nth <= 16.0; nth += 1.0) {
            if (bell_excess(nth) < 0.0) {
                bell_hi = nth;
                break;
            }
        }
        if (bell_hi < 0.0 || bell_excess(0.0) < 0.0) {
            detail = "failed to bracket the Bell threshold in [0, 16]";
            return false;
        }
        const double th_bell = bisect(bell_excess, bell_hi - 1.0, bell_hi, 0.05);

        const auto bracket_and_bisect = [&](const std::function<double(double)>& f,
                                            std::optional<double>& out) {
            double prev = 1.0;
            for (double nth : {10.0, 30.0, 100.0, 300.0, 1000.0, 3000.0, 10000.0}) {
                if (f(nth) < 0.0) {
                    out = bisect(f, prev, nth, 0.5);
                    return;
                }
                prev = nth;
            }
            out.reset();  // survives the whole scan
        };
        std::optional<double> th_st, th_en;
        bracket_and_bisect(st_value, th_st);
        bracket_and_bisect(en_value, th_en);

        const double st_th = th_st.value_or(1e9);
        const double en_th = th_en.value_or(2e9);
        detail = "thresholds: Bell = " + fmtnum(th_bell) + ", St = " + fmtnum(st_th) +
                 ", En = " + fmtnum(en_th);
        return th_bell >= 2.0 && th_bell <= 10.0 && th_bell < st_th && st_th < en_th;
    });

    // 8. Lyapunov / ODE consistency on random stable points.
    suite.run("lyapunov_ode_consistency", [&](std::string& detail) {
        std::mt19937_64 rng(555);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double worst = 0.0;
        int accepted = 0;
        while (accepted < 20) {
            SystemParams p = fig2();
            p.g_p = 0.05 + 0.40 * u01(rng);
            const double lo = -(2.0 * p.g_p + p.kappa) + 0.1;
            p.lambda_f = lo + (0.5 - lo) * u01(rng);
            const StabilityReport rep = check_stability(p);
            if (!rep.stable || rep.margin < 3e-3) continue;
            ++accepted;
            const Mat8 target = steady_covariance(p);
            const double t_end = std::min(8.0 / rep.margin, 3000.0);
            EvolveOptions opts;
            opts.store_stride = 1 << 30;
            const Mat8 end =
                evolve_covariance(p, thermal_vacuum_cm(p), t_end, 0.01, opts).cms.back();
            worst = std::max(worst, (end - target).cwiseAbs().maxCoeff());
        }
        detail = "worst entrywise difference = " + fmtnum(worst);
        return worst < 1e-6;
    });

    // 9. Counter-rotating correction: the time-periodic dynamics settles to a
    //    slightly lower mechanical entanglement than the RWA steady state.
    suite.run("non_rwa_correction", [&](std::string& detail) {
        const SystemParams p = fig2();
        const double en_rwa = steady_en(p);
        SystemParams q = fig2();
        q.rwa = false;
        const PeriodSteadyResult res = evolve_to_period_steady(
            q, thermal_vacuum_cm(q), M_PI / (40.0 * q.omega_m), 6000.0, 1e-8);
        if (!res.converged) {
            detail = "period-averaged covariance did not converge";
            return false;
        }
        const double en_full = log_negativity(mechanical_block(res.period_average)).en;
        const double deficit = en_rwa - en_full;
        detail = "En(RWA) = " + fmtnum(en_rwa) + ", En(full) = " + fmtnum(en_full) +
                 ", deficit = " + fmtnum(deficit);
        return deficit > 0.0 && deficit < 0.1;
    });

    // 10. Determinism: verify verdicts are seed-independent and sweep CSVs are
    //     byte-identical under a fixed seed.
    suite.run("determinism", [&](std::string& detail) {
        std::vector<std::string> verdicts;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const VerifyReport report = run_verify(seed);
            std::ostringstream os;
            for (const CheckResult& c : report.checks) os << c.name << '=' << c.pass << ';';
            verdicts.push_back(os.str());
            if (!report.all_pass()) {
                detail = "verify failed at seed " + std::to_string(seed);
                return false;
            }
        }
        for (const std::string& v : verdicts)
            if (v != verdicts.front()) {
                detail = "verdicts differ across seeds";
                return false;
            }

        SweepSpec spec;
        spec.axis = SweepAxis::g_p;
        spec.start = 0.1;
        spec.stop = 0.45;
        spec.n_points = 6;
        spec.base = fig2();
        spec.lock_lambda = true;
        spec.with_bell = true;
        spec.with_pred = true;
        spec.bell.n_starts = 24;
        spec.seed = 2718;
        spec.workers = 2;
        const std::string a = render_sweep_csv(spec, run_sweep(spec));
        const std::string b = render_sweep_csv(spec, run_sweep(spec));
        if (a != b) {
            detail = "sweep CSV differs between identical runs";
            return false;
        }
        detail = "5 verify seeds identical; sweep CSV byte-identical";
        return true;
    });

    if (suite.failures == 0) {
        std::printf("acceptance: all %d criteria passed\n", suite.index);
        return 0;
    }
    std::printf("acceptance: %d of %d criteria FAILED\n", suite.failures, suite.index);
    return 1;
}
