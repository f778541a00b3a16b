#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace optofb {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

/// Runs the full oracle suite: stability cross-checks, drift/noise structure,
/// Lyapunov-vs-ODE agreement, physicality, the measure calibrations, Bell
/// bounds, the adiabatic closed-form oracle, and CSV determinism. Verdicts
/// are seed-independent; the seed only moves the sampled points within each
/// tolerance.
VerifyReport run_verify(std::uint64_t seed = 12345);

std::string render_verify_table(const VerifyReport& report);

}  // namespace optofb
