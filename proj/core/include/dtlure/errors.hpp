#ifndef DTLURE_ERRORS_HPP
#define DTLURE_ERRORS_HPP

#include <stdexcept>

namespace dtlure {

/// Numerical null space does not have the dimension the eigenstructure requires.
struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A chain/modal basis is too ill-conditioned to serve as an oracle.
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A sampled threshold search ran out of range without finding a boundary.
struct SearchExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A simulated signal exceeded the hard overflow guard.
struct TrajectoryOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The system cannot be represented in a single quadratic extension field.
struct ExactModeUnsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two exact values from different quadratic fields were combined.
struct MixedDiscriminant : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dtlure

#endif
