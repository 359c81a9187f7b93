#pragma once
#include <stdexcept>
#include <string>

namespace currents {

// Configuration-level errors: unknown algebra family or rank out of range.
struct UnsupportedAlgebra : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested an invariant form of degree k where k-1 is not an exponent.
struct NotAnExponent : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numeric matrix entry was NaN or infinite.
struct NonFiniteEntry : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numeric kernel cut could not be made cleanly: singular values or
// eigenvalues cluster around the requested tolerance.
struct ToleranceAmbiguity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two graded tables were compared over incompatible bound boxes.
struct BoundsMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace currents
