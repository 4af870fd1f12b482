#pragma once

#include <stdexcept>
#include <string>

namespace pyrofield {

// Model parameter triple fails one of the validity inequalities.
struct ConstraintViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested exact diagonal index beyond the configured cap.
struct ExactLimitExceeded : std::domain_error {
    using std::domain_error::domain_error;
};

// Requested brute-force triangle beyond the configured cap.
struct EnumLimitExceeded : std::domain_error {
    using std::domain_error::domain_error;
};

// Coupled simulation requested with unordered parameters or mismatched setup.
struct CouplingOrderViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Moments requested for a law with no finite moments.
struct DivergentMoments : std::domain_error {
    using std::domain_error::domain_error;
};

// A computed quantity violated an internal invariant (e.g. a probability
// table drifting away from sum 1). Never silently repaired.
struct InternalConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace pyrofield
