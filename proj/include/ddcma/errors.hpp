#pragma once

#include <stdexcept>
#include <string>

namespace ddcma {

// Invalid construction-time settings (bad dimensions, rates out of range, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A matrix that must be positive definite lost that property, or an
// iterative decomposition failed to converge.
struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A candidate evaluation produced a non-finite value.
struct EvaluationError : std::runtime_error {
    EvaluationError(const std::string& what, long candidate)
        : std::runtime_error(what), candidate_index(candidate) {}
    long candidate_index;
};

// ask/tell called out of order, checkpoint header mismatch, and similar
// caller-side sequencing mistakes.
struct ProtocolError : std::logic_error {
    using std::logic_error::logic_error;
};

// Numerical blow-up of a run (overflow/underflow of the step size or the
// decoding, non-finite state).  Strategies convert this into a degenerate
// termination status rather than crashing the process.
struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ddcma
