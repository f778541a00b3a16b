#include "optofb/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "optofb/errors.hpp"

namespace optofb {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string params_canonical(const SystemParams& p) {
    std::ostringstream os;
    os << fmt(p.omega_m) << ',' << fmt(p.kappa) << ',' << fmt(p.gamma_m) << ',' << fmt(p.g_o)
       << ',' << fmt(p.g_p) << ',' << fmt(p.lambda_f) << ',' << fmt(p.eta_f) << ','
       << fmt(p.n_th) << ',' << (p.rwa ? "true" : "false");
    return os.str();
}

SystemParams resolve_point(const SweepSpec& spec, double axis_value) {
    SystemParams p = spec.base;
    switch (spec.axis) {
        case SweepAxis::lambda_f: p.lambda_f = axis_value; break;
        case SweepAxis::g_p: p.g_p = axis_value; break;
        case SweepAxis::n_th: p.n_th = axis_value; break;
        case SweepAxis::time: break;
    }
    if (spec.lock_lambda) p.lambda_f = -4.0 * p.g_p;
    return p;
}

BellConfig point_bell_config(const SweepSpec& spec, int index) {
    BellConfig cfg = spec.bell;
    cfg.seed = spec.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index);
    return cfg;
}

SweepRow compute_steady_row(const SweepSpec& spec, int index, double axis_value) {
    SweepRow row;
    row.axis_value = axis_value;
    row.resolved = resolve_point(spec, axis_value);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        row.stable = check_stability(row.resolved).stable;
        if (row.stable) {
            const Mat8 sigma = steady_covariance(row.resolved);
            row.measures = compute_measures(mechanical_block(sigma), spec.with_bell,
                                            point_bell_config(spec, index));
            row.ok = true;
        }
    } catch (const std::exception& e) {
        row.ok = false;
        row.stable = false;
        row.error = e.what();
    }
    if (spec.with_pred) {
        try {
            row.pred = analytic_measures(row.resolved);
        } catch (const std::exception&) {
            row.pred.reset();
        }
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

std::vector<SweepRow> run_time_sweep(const SweepSpec& spec) {
    const SystemParams p = resolve_point(spec, 0.0);
    p.validate();
    if (spec.start < 0.0 || spec.stop <= spec.start)
        throw InvalidParams("time axis requires 0 <= start < stop");
    const double dt = spec.dt > 0.0 ? spec.dt : (p.rwa ? 0.02 : M_PI / (40.0 * p.omega_m));

    std::vector<SweepRow> rows(spec.n_points);
    Mat8 sigma = thermal_vacuum_cm(p);
    double t = 0.0;
    bool dead = false;
    std::string death_note;
    for (int i = 0; i < spec.n_points; ++i) {
        const double target =
            spec.start + (spec.stop - spec.start) * static_cast<double>(i) /
                             static_cast<double>(spec.n_points - 1);
        SweepRow& row = rows[i];
        row.axis_value = target;
        row.resolved = p;
        const auto tick = std::chrono::steady_clock::now();
        if (!dead && target > t) {
            try {
                EvolveOptions opts;
                opts.divergence_bound = spec.divergence_bound;
                opts.store_stride = 1 << 30;  // endpoints only
                opts.t0 = t;
                const CmTrajectory chunk = evolve_covariance(p, sigma, target - t, dt, opts);
                sigma = chunk.cms.back();
                t = target;
            } catch (const DivergenceError& e) {
                dead = true;
                death_note = e.what();
            }
        }
        if (dead) {
            row.stable = false;
            row.ok = false;
            row.error = death_note;
        } else {
            try {
                row.stable = true;
                row.measures = compute_measures(mechanical_block(sigma), spec.with_bell,
                                                point_bell_config(spec, i));
                row.ok = true;
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
            }
        }
        if (spec.with_pred) {
            try {
                row.pred = analytic_measures(p);
            } catch (const std::exception&) {
                row.pred.reset();
            }
        }
        row.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - tick).count();
    }
    return rows;
}

}  // namespace

const char* axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::lambda_f: return "lambda_f";
        case SweepAxis::g_p: return "g_p";
        case SweepAxis::n_th: return "n_th";
        case SweepAxis::time: return "time";
    }
    return "?";
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.n_points < 2) throw InvalidParams("sweep needs n_points >= 2");
    if (spec.lock_lambda && spec.axis == SweepAxis::lambda_f)
        throw InvalidParams("lock_lambda conflicts with sweeping lambda_f");
    if (spec.axis == SweepAxis::time) return run_time_sweep(spec);
    if (!spec.base.rwa)
        throw InvalidParams("steady-state sweeps require rwa = true; use the time axis or the "
                            "evolve driver for the time-periodic dynamics");

    std::vector<double> grid(spec.n_points);
    for (int i = 0; i < spec.n_points; ++i)
        grid[i] = spec.start + (spec.stop - spec.start) * static_cast<double>(i) /
                                   static_cast<double>(spec.n_points - 1);

    std::vector<SweepRow> rows(spec.n_points);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = std::min<int>(spec.workers > 0 ? spec.workers : static_cast<int>(hw),
                                      spec.n_points);
    if (workers <= 1) {
        for (int i = 0; i < spec.n_points; ++i) rows[i] = compute_steady_row(spec, i, grid[i]);
        return rows;
    }

    std::atomic<int> next{0};
    auto work = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= spec.n_points) return;
            rows[i] = compute_steady_row(spec, i, grid[i]);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    return rows;
}

std::string manifest_hash_hex(const SweepSpec& spec) {
    std::ostringstream os;
    os << kToolVersion << '|' << axis_name(spec.axis) << '|' << fmt(spec.start) << '|'
       << fmt(spec.stop) << '|' << spec.n_points << '|' << spec.lock_lambda << '|'
       << spec.with_bell << '|' << spec.with_pred << '|' << params_canonical(spec.base) << '|'
       << spec.bell.n_starts << ',' << fmt(spec.bell.grid_half_width) << ',' << fmt(spec.bell.tol)
       << ',' << spec.bell.max_iter << '|' << spec.seed << '|' << fmt(spec.dt) << '|'
       << fmt(spec.divergence_bound);
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(os.str())));
    return buf;
}

std::string render_sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "# optofb sweep v" << kToolVersion << "\n";
    os << "# manifest_hash = " << manifest_hash_hex(spec) << "\n";
    os << "axis,axis_value,stable,omega_m,kappa,gamma_m,g_o,g_p,lambda_f,eta_f,n_th,rwa,"
          "En,St_1to2,St_2to1,P_m";
    if (spec.with_bell) os << ",B_max";
    os << ",zeta_en,chi_st";
    if (spec.with_pred) os << ",pred_zeta_en,pred_En,pred_chi_st,pred_St";
    os << "\n";

    for (const SweepRow& row : rows) {
        const SystemParams& p = row.resolved;
        os << axis_name(spec.axis) << ',' << fmt(row.axis_value) << ','
           << (row.stable ? "true" : "false") << ',' << fmt(p.omega_m) << ',' << fmt(p.kappa)
           << ',' << fmt(p.gamma_m) << ',' << fmt(p.g_o) << ',' << fmt(p.g_p) << ','
           << fmt(p.lambda_f) << ',' << fmt(p.eta_f) << ',' << fmt(p.n_th) << ','
           << (p.rwa ? "true" : "false");
        if (row.ok) {
            const MeasureSet& m = row.measures;
            os << ',' << fmt(m.en) << ',' << fmt(m.st_1to2) << ',' << fmt(m.st_2to1) << ','
               << fmt(m.p_m);
            if (spec.with_bell) os << ',' << (m.bell ? fmt(m.bell->b_max) : std::string());
            os << ',' << fmt(m.zeta_en) << ',' << fmt(m.chi_st_1to2);
        } else {
            os << ",,,,";
            if (spec.with_bell) os << ',';
            os << ",,";
        }
        if (spec.with_pred) {
            if (row.pred) {
                const double pred_en = std::max(0.0, -std::log(2.0 * row.pred->zeta_en));
                const double pred_st =
                    row.pred->chi_st > 0.0 ? std::max(0.0, 0.5 * std::log(row.pred->chi_st)) : 0.0;
                os << ',' << fmt(row.pred->zeta_en) << ',' << fmt(pred_en) << ','
                   << fmt(row.pred->chi_st) << ',' << fmt(pred_st);
            } else {
                os << ",,,,";
            }
        }
        os << "\n";
    }
    return os.str();
}

std::string render_manifest_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["manifest_hash"] = manifest_hash_hex(spec);
    j["seed"] = spec.seed;
    const SystemParams& p = spec.base;
    j["params"] = {{"omega_m", p.omega_m}, {"kappa", p.kappa},       {"gamma_m", p.gamma_m},
                   {"g_o", p.g_o},         {"g_p", p.g_p},           {"lambda_f", p.lambda_f},
                   {"eta_f", p.eta_f},     {"n_th", p.n_th},         {"rwa", p.rwa}};
    j["sweep"] = {{"axis", axis_name(spec.axis)},
                  {"start", spec.start},
                  {"stop", spec.stop},
                  {"n_points", spec.n_points},
                  {"lock_lambda", spec.lock_lambda},
                  {"with_bell", spec.with_bell},
                  {"with_pred", spec.with_pred},
                  {"dt", spec.dt},
                  {"divergence_bound", spec.divergence_bound}};
    j["bell"] = {{"n_starts", spec.bell.n_starts},
                 {"grid_half_width", spec.bell.grid_half_width},
                 {"tol", spec.bell.tol},
                 {"max_iter", spec.bell.max_iter}};
    std::vector<double> wall;
    wall.reserve(rows.size());
    for (const SweepRow& r : rows) wall.push_back(r.wall_seconds);
    j["wall_clock_per_point_s"] = wall;
    return j.dump(2) + "\n";
}

void write_sweep_outputs(const SweepSpec& spec, const std::vector<SweepRow>& rows,
                         const std::string& csv_path, const std::string& manifest_path) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::ios_base::failure("cannot open '" + csv_path + "' for writing");
    csv << render_sweep_csv(spec, rows);
    if (!csv) throw std::ios_base::failure("failed writing '" + csv_path + "'");

    std::ofstream manifest(manifest_path);
    if (!manifest) throw std::ios_base::failure("cannot open '" + manifest_path + "' for writing");
    manifest << render_manifest_json(spec, rows);
    if (!manifest) throw std::ios_base::failure("failed writing '" + manifest_path + "'");
}

std::string render_measures_csv(const MeasureSet& ms) {
    std::ostringstream os;
    os << "En,St_1to2,St_2to1,P_m,B_max,zeta_en,chi_st\n";
    os << fmt(ms.en) << ',' << fmt(ms.st_1to2) << ',' << fmt(ms.st_2to1) << ',' << fmt(ms.p_m)
       << ',' << (ms.bell ? fmt(ms.bell->b_max) : std::string()) << ',' << fmt(ms.zeta_en) << ','
       << fmt(ms.chi_st_1to2) << "\n";
    return os.str();
}

EvolveRunResult run_evolve(const EvolveRunSpec& spec) {
    spec.params.validate();
    if (!(spec.t_end >= 0.0)) throw InvalidParams("t_end must be non-negative");
    if (spec.samples < 1) throw InvalidParams("samples must be >= 1");

    const auto auto_dt = [](const SystemParams& p) {
        return p.rwa ? 0.02 : M_PI / (40.0 * p.omega_m);
    };

    std::vector<SystemParams> variants;
    if (spec.both_rwa) {
        SystemParams with = spec.params;
        with.rwa = true;
        SystemParams without = spec.params;
        without.rwa = false;
        variants = {with, without};
    } else {
        variants = {spec.params};
    }

    EvolveRunResult result;
    std::ostringstream os;
    os << "t";
    for (const SystemParams& v : variants) {
        const char* tag = v.rwa ? "rwa" : "full";
        os << ",En_m_" << tag << ",En_c_" << tag;
    }
    os << "\n";

    struct VariantState {
        SystemParams params;
        Mat8 sigma;
        double dt;
        bool dead = false;
    };
    std::vector<VariantState> states;
    for (const SystemParams& v : variants) {
        VariantState st;
        st.params = v;
        st.sigma = spec.use_default_sigma0 ? thermal_vacuum_cm(v) : symmetrized(spec.sigma0);
        st.dt = spec.dt > 0.0 ? spec.dt : auto_dt(v);
        states.push_back(st);
    }

    const int rows = spec.t_end == 0.0 ? 1 : spec.samples;
    double t = 0.0;
    for (int i = 0; i < rows; ++i) {
        const double target =
            rows == 1 ? 0.0
                      : spec.t_end * static_cast<double>(i) / static_cast<double>(rows - 1);
        for (VariantState& st : states) {
            if (st.dead || target <= t) continue;
            try {
                EvolveOptions opts;
                opts.divergence_bound = spec.divergence_bound;
                opts.store_stride = 1 << 30;
                opts.t0 = t;
                st.sigma = evolve_covariance(st.params, st.sigma, target - t, st.dt, opts)
                               .cms.back();
            } catch (const DivergenceError& e) {
                st.dead = true;
                result.diverged = true;
                result.blowup_time = e.time;
            }
        }
        t = std::max(t, target);
        os << fmt(target);
        for (VariantState& st : states) {
            if (st.dead) {
                os << ",,";
            } else {
                os << ',' << fmt(log_negativity(mechanical_block(st.sigma)).en) << ','
                   << fmt(log_negativity(cavity_block(st.sigma)).en);
            }
        }
        os << "\n";
        result.trajectory.times.push_back(target);
        result.trajectory.cms.push_back(states.front().sigma);
    }
    result.csv = os.str();
    return result;
}

std::string render_trajectory_csv(const CmTrajectory& traj) {
    std::ostringstream os;
    os << "t";
    for (int i = 0; i < 8; ++i)
        for (int j = i; j < 8; ++j) os << ",sigma_" << i + 1 << j + 1;
    os << "\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        os << fmt(traj.times[k]);
        for (int i = 0; i < 8; ++i)
            for (int j = i; j < 8; ++j) os << ',' << fmt(traj.cms[k](i, j));
        os << "\n";
    }
    return os.str();
}

std::string render_params_json(const SystemParams& p) {
    nlohmann::json j = {{"omega_m", p.omega_m}, {"kappa", p.kappa},   {"gamma_m", p.gamma_m},
                        {"g_o", p.g_o},         {"g_p", p.g_p},       {"lambda_f", p.lambda_f},
                        {"eta_f", p.eta_f},     {"n_th", p.n_th},     {"rwa", p.rwa},
                        {"tool_version", kToolVersion}};
    return j.dump(2) + "\n";
}

}  // namespace optofb
