#pragma once

#include <stdexcept>
#include <string>

namespace optofb {

struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnstableSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPhysicalCovariance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Covariance entries exceeded the divergence bound during time integration.
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(double t_blowup, const std::string& what)
        : std::runtime_error(what), time(t_blowup) {}
    double time;
};

}  // namespace optofb
