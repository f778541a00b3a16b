// optofb: steady states, time evolution, correlation measures and parameter
// sweeps for two feedback-controlled optomechanical oscillators in the
// Gaussian regime. All rates are dimensionless multiples of kappa.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "optofb/config.hpp"
#include "optofb/dynamics.hpp"
#include "optofb/effective.hpp"
#include "optofb/errors.hpp"
#include "optofb/measures.hpp"
#include "optofb/sweep.hpp"
#include "optofb/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitIo = 3;

struct ParamCli {
    std::string config_path;
    optofb::ParamOverrides flags;
};

void add_param_options(CLI::App* cmd, ParamCli& pc) {
    cmd->add_option("--config", pc.config_path, "flat key = value parameter file");
    cmd->add_option("--omega_m", pc.flags.omega_m, "mechanical frequency (units of kappa)");
    cmd->add_option("--kappa", pc.flags.kappa, "cavity dissipation rate (rate unit, default 1)");
    cmd->add_option("--gamma_m", pc.flags.gamma_m, "mechanical damping rate");
    cmd->add_option("--g_o", pc.flags.g_o, "optomechanical coupling");
    cmd->add_option("--g_p", pc.flags.g_p, "parametric downconversion coupling");
    cmd->add_option("--lambda_f", pc.flags.lambda_f, "feedback gain");
    cmd->add_option("--eta_f", pc.flags.eta_f, "homodyne detection efficiency in (0, 1]");
    cmd->add_option("--n_th", pc.flags.n_th, "mean thermal phonon number");
    cmd->add_option("--rwa", pc.flags.rwa, "rotating-wave approximation (true/false)");
}

optofb::SystemParams resolve_params(const ParamCli& pc) {
    optofb::SystemParams p;
    if (!pc.config_path.empty())
        p = optofb::apply_overrides(p, optofb::parse_config_file(pc.config_path));
    p = optofb::apply_overrides(p, pc.flags);  // flags win over the file
    p.validate();
    return p;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::ios_base::failure("failed writing '" + path + "'");
}

void add_bell_options(CLI::App* cmd, optofb::BellConfig& cfg) {
    cmd->add_option("--bell-starts", cfg.n_starts, "multi-start count for the Bell optimizer");
    cmd->add_option("--bell-width", cfg.grid_half_width, "coarse-grid half width per coordinate");
    cmd->add_option("--bell-tol", cfg.tol, "simplex convergence tolerance");
    cmd->add_option("--bell-iters", cfg.max_iter, "simplex iteration cap per start");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian dynamics and quantum-correlation toolkit for two "
                 "feedback-controlled optomechanical oscillators"};
    app.require_subcommand(1);

    // evolve ------------------------------------------------------------------
    auto* evolve = app.add_subcommand(
        "evolve", "integrate the covariance ODE and emit entanglement vs time");
    ParamCli evolve_params;
    add_param_options(evolve, evolve_params);
    double ev_t_end = 2000.0;
    double ev_dt = 0.0;
    int ev_samples = 400;
    bool ev_both = false;
    std::string ev_output = "-";
    std::string ev_dump_cm;
    evolve->add_option("--t-end", ev_t_end, "integration horizon (units of 1/kappa)");
    evolve->add_option("--dt", ev_dt, "integration step (0 = auto)");
    evolve->add_option("--samples", ev_samples, "number of emitted rows");
    evolve->add_flag("--both-rwa", ev_both, "emit RWA and full-dynamics columns in one run");
    evolve->add_option("--output,-o", ev_output, "CSV output path ('-' = stdout)");
    evolve->add_option("--dump-cm", ev_dump_cm,
                       "also write the raw covariance trajectory (plus a JSON parameter sidecar)");

    // steady ------------------------------------------------------------------
    auto* steady = app.add_subcommand("steady", "steady-state measures from the Lyapunov solve");
    ParamCli steady_params;
    add_param_options(steady, steady_params);
    bool st_bell = false;
    bool st_pred = false;
    std::string st_output = "-";
    std::string st_dump_cm;
    optofb::BellConfig st_bell_cfg;
    std::uint64_t st_seed = 12345;
    steady->add_flag("--bell", st_bell, "maximize the Bell-CHSH parameter as well");
    steady->add_flag("--pred", st_pred, "print the adiabatic closed-form predictions as well");
    steady->add_option("--seed", st_seed, "Bell optimizer seed");
    steady->add_option("--output,-o", st_output, "output path ('-' = stdout)");
    steady->add_option("--dump-cm", st_dump_cm, "write the steady 8x8 covariance as CSV");
    add_bell_options(steady, st_bell_cfg);

    // sweep -------------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV plus a JSON run manifest");
    ParamCli sweep_params;
    add_param_options(sweep, sweep_params);
    std::string sw_axis = "lambda_f";
    optofb::SweepSpec spec;
    std::string sw_output;
    std::string sw_manifest;
    sweep->add_option("--axis", sw_axis, "one of lambda_f, g_p, n_th, time")->required();
    sweep->add_option("--start", spec.start, "axis start")->required();
    sweep->add_option("--stop", spec.stop, "axis stop")->required();
    sweep->add_option("--points", spec.n_points, "number of grid points")->required();
    sweep->add_flag("--lock-lambda", spec.lock_lambda, "slave the feedback gain to lambda_f = -4 g_p");
    sweep->add_flag("--bell", spec.with_bell, "compute B_max per point (dominates runtime)");
    sweep->add_flag("--pred", spec.with_pred, "emit adiabatic closed-form prediction columns");
    sweep->add_option("--workers", spec.workers, "concurrent points (0 = hardware)");
    sweep->add_option("--seed", spec.seed, "random seed recorded in the manifest");
    sweep->add_option("--dt", spec.dt, "integration step for the time axis (0 = auto)");
    sweep->add_option("--output,-o", sw_output, "CSV output path")->required();
    sweep->add_option("--manifest", sw_manifest, "manifest path (default <output>.manifest.json)");
    add_bell_options(sweep, spec.bell);

    // bell --------------------------------------------------------------------
    auto* bell = app.add_subcommand("bell", "maximize |B| for the steady state");
    ParamCli bell_params;
    add_param_options(bell, bell_params);
    optofb::BellConfig bell_cfg;
    std::uint64_t bell_seed = 12345;
    bell->add_option("--seed", bell_seed, "optimizer seed");
    add_bell_options(bell, bell_cfg);

    // verify ------------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run the oracle suite and print a summary table");
    std::uint64_t verify_seed = 12345;
    verify->add_option("--seed", verify_seed, "seed for the sampled checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (*evolve) {
            optofb::EvolveRunSpec rs;
            rs.params = resolve_params(evolve_params);
            rs.t_end = ev_t_end;
            rs.dt = ev_dt;
            rs.samples = ev_samples;
            rs.both_rwa = ev_both;
            const optofb::EvolveRunResult result = optofb::run_evolve(rs);
            write_text(ev_output, result.csv);
            if (!ev_dump_cm.empty()) {
                write_text(ev_dump_cm, optofb::render_trajectory_csv(result.trajectory));
                write_text(ev_dump_cm + ".params.json", optofb::render_params_json(rs.params));
            }
            if (result.diverged) {
                std::cerr << "evolve: covariance diverged at t = " << result.blowup_time
                          << " (unstable parameters)\n";
                return kExitFailure;
            }
            return kExitOk;
        }

        if (*steady) {
            const optofb::SystemParams p = resolve_params(steady_params);
            const optofb::Mat8 sigma = optofb::steady_covariance(p);
            st_bell_cfg.seed = st_seed;
            optofb::MeasureSet ms =
                optofb::compute_measures(optofb::mechanical_block(sigma), st_bell, st_bell_cfg);
            std::string text = optofb::render_measures_csv(ms);
            if (st_pred) {
                const optofb::AnalyticMeasures pred = optofb::analytic_measures(p);
                text += "pred_zeta_en,pred_chi_st\n";
                char buf[96];
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", pred.zeta_en, pred.chi_st);
                text += buf;
            }
            write_text(st_output, text);
            if (!st_dump_cm.empty()) {
                optofb::CmTrajectory single;
                single.times.push_back(0.0);
                single.cms.push_back(sigma);
                write_text(st_dump_cm, optofb::render_trajectory_csv(single));
            }
            return kExitOk;
        }

        if (*sweep) {
            if (sw_axis == "lambda_f") spec.axis = optofb::SweepAxis::lambda_f;
            else if (sw_axis == "g_p") spec.axis = optofb::SweepAxis::g_p;
            else if (sw_axis == "n_th") spec.axis = optofb::SweepAxis::n_th;
            else if (sw_axis == "time") spec.axis = optofb::SweepAxis::time;
            else throw optofb::InvalidParams("unknown axis '" + sw_axis + "'");
            spec.base = resolve_params(sweep_params);
            const std::vector<optofb::SweepRow> rows = optofb::run_sweep(spec);
            const std::string manifest_path =
                sw_manifest.empty() ? sw_output + ".manifest.json" : sw_manifest;
            optofb::write_sweep_outputs(spec, rows, sw_output, manifest_path);
            return kExitOk;
        }

        if (*bell) {
            const optofb::SystemParams p = resolve_params(bell_params);
            const optofb::Mat8 sigma = optofb::steady_covariance(p);
            bell_cfg.seed = bell_seed;
            const optofb::BellResult result =
                optofb::maximize_bell(optofb::mechanical_block(sigma), bell_cfg);
            std::cout << "B_max = " << result.b_max << "\n";
            std::cout << "argmax (b1x b1y b2x b2y b1'x b1'y b2'x b2'y) =";
            for (int i = 0; i < 8; ++i) std::cout << ' ' << result.argmax[i];
            std::cout << "\nconverged_starts = " << result.starts_converged << "/"
                      << result.n_starts << "\n";
            return kExitOk;
        }

        if (*verify) {
            const optofb::VerifyReport report = optofb::run_verify(verify_seed);
            std::cout << optofb::render_verify_table(report);
            return report.all_pass() ? kExitOk : kExitFailure;
        }
    } catch (const optofb::InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const optofb::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const optofb::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}
