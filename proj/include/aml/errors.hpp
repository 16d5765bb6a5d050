#pragma once

#include <stdexcept>
#include <string>

namespace aml {

/// Argument lies outside the open validity interval of a CGF.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Derivative order outside {0,1,2,3}.
struct InvalidOrder : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Scalar root finder exhausted its iteration budget.
struct NoConvergence : std::runtime_error {
    NoConvergence(const std::string& what, double lo, double hi)
        : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
    double bracket_lo;
    double bracket_hi;
};

struct RankDeficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shifted normal equations of the TLS closed form are numerically singular.
struct TlsDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateVariance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroTruth : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyGroup : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooManyComponents : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad run configuration or malformed input file.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace aml
