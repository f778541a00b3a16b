#include "optofb/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "optofb/errors.hpp"

namespace optofb {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, int line_no) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size()) {
        std::ostringstream msg;
        msg << "line " << line_no << ": cannot parse number '" << value << "'";
        throw ConfigError(msg.str());
    }
    return out;
}

bool parse_bool(const std::string& value, int line_no) {
    std::string v = value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    std::ostringstream msg;
    msg << "line " << line_no << ": cannot parse boolean '" << value << "'";
    throw ConfigError(msg.str());
}

}  // namespace

ParamOverrides parse_config_text(const std::string& text) {
    ParamOverrides overrides;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected 'key = value', got '" << line << "'";
            throw ConfigError(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "omega_m") overrides.omega_m = parse_double(value, line_no);
        else if (key == "kappa") overrides.kappa = parse_double(value, line_no);
        else if (key == "gamma_m") overrides.gamma_m = parse_double(value, line_no);
        else if (key == "g_o") overrides.g_o = parse_double(value, line_no);
        else if (key == "g_p") overrides.g_p = parse_double(value, line_no);
        else if (key == "lambda_f") overrides.lambda_f = parse_double(value, line_no);
        else if (key == "eta_f") overrides.eta_f = parse_double(value, line_no);
        else if (key == "n_th") overrides.n_th = parse_double(value, line_no);
        else if (key == "rwa") overrides.rwa = parse_bool(value, line_no);
        else {
            std::ostringstream msg;
            msg << "line " << line_no << ": unknown key '" << key << "'";
            throw ConfigError(msg.str());
        }
    }
    return overrides;
}

ParamOverrides parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

SystemParams apply_overrides(SystemParams base, const ParamOverrides& o) {
    if (o.omega_m) base.omega_m = *o.omega_m;
    if (o.kappa) base.kappa = *o.kappa;
    if (o.gamma_m) base.gamma_m = *o.gamma_m;
    if (o.g_o) base.g_o = *o.g_o;
    if (o.g_p) base.g_p = *o.g_p;
    if (o.lambda_f) base.lambda_f = *o.lambda_f;
    if (o.eta_f) base.eta_f = *o.eta_f;
    if (o.n_th) base.n_th = *o.n_th;
    if (o.rwa) base.rwa = *o.rwa;
    return base;
}

}  // namespace optofb
