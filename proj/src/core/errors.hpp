#pragma once

#include <stdexcept>
#include <string>

namespace minlen {

/// Argument outside the mathematical domain of an operation (negative length,
/// alpha <= -1, non-positive Gamma argument, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Structurally invalid request: wrong quantum-number convention, l >= n for
/// hydrogen, malformed input file.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative procedure failed to converge. `what()` carries the diagnostics.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested (n, l) bound state does not exist for the potential on the
/// given grid.
class NoBoundStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two levels carry identical deformation coefficients, so a transition between
/// them cannot constrain the minimal length.
class InsensitiveTransitionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace minlen
