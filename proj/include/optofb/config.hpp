#pragma once

#include <map>
#include <optional>
#include <string>

#include "optofb/model.hpp"

namespace optofb {

/// Optional overrides for every SystemParams field; unset fields keep the
/// value they have in the base. CLI flags and config files both funnel
/// through this so that flags win over the file.
struct ParamOverrides {
    std::optional<double> omega_m;
    std::optional<double> kappa;
    std::optional<double> gamma_m;
    std::optional<double> g_o;
    std::optional<double> g_p;
    std::optional<double> lambda_f;
    std::optional<double> eta_f;
    std::optional<double> n_th;
    std::optional<bool> rwa;
};

/// Parses a flat `key = value` file (UTF-8, '#' comments, blank lines
/// allowed). Keys are exactly the SystemParams field names; anything else is
/// a ConfigError with the offending line number.
ParamOverrides parse_config_file(const std::string& path);

/// Parses config text directly (same grammar as parse_config_file).
ParamOverrides parse_config_text(const std::string& text);

SystemParams apply_overrides(SystemParams base, const ParamOverrides& overrides);

}  // namespace optofb
