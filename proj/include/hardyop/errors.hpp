#pragma once

#include <stdexcept>
#include <string>

namespace hardyop {

/// Quadrature scheme incompatible with the requested dimension or counts.
struct InvalidSchemeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An integrand produced a non-finite or out-of-domain value at a node.
struct QuadratureDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Symbol/point dimension mismatch.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operation requires a feature gated to a smaller setting (e.g. inner-function
/// witnesses exist constructively only on the disk).
struct GatedFeatureError : std::logic_error {
    using std::logic_error::logic_error;
};

/// A finite compute budget (expansion degree, search stages) was insufficient.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A stated precondition does not hold (e.g. estimator applied to an
/// operator already classified unbounded).
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Two algebraically identical computation routes disagreed beyond tolerance.
struct InternalConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad CLI/job configuration.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace hardyop
