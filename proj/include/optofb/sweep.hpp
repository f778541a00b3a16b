#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "optofb/dynamics.hpp"
#include "optofb/effective.hpp"
#include "optofb/measures.hpp"
#include "optofb/model.hpp"

namespace optofb {

inline constexpr const char* kToolVersion = "0.1.0";

enum class SweepAxis { lambda_f, g_p, n_th, time };

const char* axis_name(SweepAxis axis);

/// Declarative description of a parameter sweep. The axis grid is n_points
/// equally spaced values over [start, stop]; with lock_lambda the feedback
/// gain is slaved to lambda_f = -4 g_p at every point. For axis = time the
/// grid samples one trajectory of the base parameters instead.
struct SweepSpec {
    SweepAxis axis = SweepAxis::lambda_f;
    double start = 0.0;
    double stop = 1.0;
    int n_points = 2;
    SystemParams base;
    bool lock_lambda = false;
    bool with_bell = false;
    bool with_pred = false;
    BellConfig bell;
    int workers = 0;  ///< 0 = hardware concurrency
    std::uint64_t seed = 12345;
    double dt = 0.0;  ///< time-axis integration step; 0 = auto
    double divergence_bound = 1e6;
};

struct SweepRow {
    double axis_value = 0.0;
    SystemParams resolved;
    bool stable = false;
    bool ok = false;  ///< measures were computed
    std::string error;
    MeasureSet measures;
    std::optional<AnalyticMeasures> pred;
    double wall_seconds = 0.0;
};

/// Executes the sweep, one row per axis point. Points run concurrently up to
/// the worker count; rows come back in axis order and per-point failures are
/// captured into the row (stable = false, empty measures), never thrown.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Deterministic CSV body: '#' comment lines carrying the tool version and
/// manifest hash, a header row, then one row per point with the resolved
/// parameters echoed and 17-significant-digit values.
std::string render_sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Hash over everything needed to byte-reproduce the CSV (version, resolved
/// base parameters, sweep spec, Bell configuration, seed). Wall-clock times
/// are excluded on purpose.
std::string manifest_hash_hex(const SweepSpec& spec);

/// JSON manifest: tool version, resolved parameters, sweep spec, seed, and
/// wall-clock per point.
std::string render_manifest_json(const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Writes CSV and manifest; throws std::ios_base::failure on I/O errors.
void write_sweep_outputs(const SweepSpec& spec, const std::vector<SweepRow>& rows,
                         const std::string& csv_path, const std::string& manifest_path);

/// Single MeasureSet as the canonical one-row CSV (header plus row):
/// En, St_1to2, St_2to1, P_m, B_max, zeta_en, chi_st.
std::string render_measures_csv(const MeasureSet& ms);

struct EvolveRunSpec {
    SystemParams params;
    double t_end = 2000.0;
    double dt = 0.0;  ///< 0 = auto (0.02 for RWA, pi/(40 omega_m) otherwise)
    int samples = 400;
    bool both_rwa = false;  ///< emit RWA and full columns on a shared grid
    double divergence_bound = 1e6;
    Mat8 sigma0 = Mat8::Zero();  ///< zero means the thermal/vacuum default
    bool use_default_sigma0 = true;
};

struct EvolveRunResult {
    std::string csv;  ///< t plus mechanical/cavity entanglement columns
    bool diverged = false;
    double blowup_time = 0.0;
    CmTrajectory trajectory;  ///< trajectory of the primary (config) variant
};

/// Time evolution driver: integrates the covariance ODE and emits per-sample
/// logarithmic negativity of the mechanical and cavity blocks.
EvolveRunResult run_evolve(const EvolveRunSpec& spec);

/// Raw covariance trajectory: t plus the 36 row-major upper-triangle entries.
std::string render_trajectory_csv(const CmTrajectory& traj);

/// SystemParams as a JSON object (sidecar for trajectory exports).
std::string render_params_json(const SystemParams& params);

}  // namespace optofb
