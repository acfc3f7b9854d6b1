#ifndef KLT_ERRORS_HPP
#define KLT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace klt {

// Thrown when arguments violate an operation's preconditions.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an object is in the wrong state for the requested operation
// (e.g. centering an already-centered Gram matrix).
struct InvalidState : std::logic_error {
    using std::logic_error::logic_error;
};

// Iterative solver exceeded its iteration cap.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Power iteration started from a vector (numerically) orthogonal to the
// operator range.
struct DegenerateStart : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested eigenpair is not well separated; refusing to return an
// arbitrary basis of an eigenspace.
struct SpectralGapTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A matrix that must be (semi)definite failed a definiteness-dependent step.
struct NotPositiveDefinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file; message carries the position of the offense.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace klt

#endif
