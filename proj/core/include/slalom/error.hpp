#pragma once

#include <stdexcept>
#include <string>

namespace slalom {

/// Input outside the physical or numerical domain a routine supports.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative solver, tracker or quadrature failed to meet its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The integration contour crosses a branch cut of sqrt(r^2).
class CutCrossingError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace slalom
