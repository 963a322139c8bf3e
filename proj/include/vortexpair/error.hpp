#pragma once

#include <stdexcept>
#include <string>

namespace vpair {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A field has no mass (or no active cells) where one is required.
class DegenerateField : public Error {
public:
    using Error::Error;
};

class SingularKernel : public Error {
public:
    using Error::Error;
};

/// The grid does not resolve the scaled profile support.
class ResolutionError : public Error {
public:
    ResolutionError(const std::string& what, int required_cells_per_unit)
        : Error(what), required_cells_per_unit_(required_cells_per_unit) {}

    /// Minimum number of cells per unit length that would satisfy the check.
    int required_cells_per_unit() const noexcept { return required_cells_per_unit_; }

private:
    int required_cells_per_unit_;
};

/// The requested impulse cannot be reached by any speed multiplier.
class InfeasibleImpulse : public Error {
public:
    using Error::Error;
};

class StepSizeError : public Error {
public:
    using Error::Error;
};

class InconsistentInput : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace vpair
