#pragma once

#include <stdexcept>
#include <string>

namespace dcurve {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Division by a dual number with zero real part (a zero divisor of the ring).
struct NonInvertible : Error {
    using Error::Error;
};

/// Input outside the domain of a lifted analytic function.
struct DomainError : Error {
    using Error::Error;
};

/// Dual angle unrecoverable: |cos| at or beyond 1, or parallel real parts.
struct DegenerateAngle : Error {
    using Error::Error;
};

/// Vector whose real part vanishes has no dual norm.
struct ZeroRealPart : Error {
    using Error::Error;
};

/// Operation requires unit dual vectors.
struct NotUnit : Error {
    using Error::Error;
};

/// Frenet apparatus undefined: vanishing speed or curvature real part.
struct DegenerateCurve : Error {
    using Error::Error;
};

/// Curve is not parameterized by dual arc length.
struct NotUnitSpeed : Error {
    using Error::Error;
};

/// Parameter value outside the declared interval.
struct OutOfDomain : Error {
    using Error::Error;
};

/// Failure while evaluating a curve expression, with source location.
struct EvalError : Error {
    int line = 0;
    int column = 0;
    EvalError(const std::string& msg, int line_, int column_)
        : Error(msg + " (at " + std::to_string(line_) + ":" + std::to_string(column_) + ")"),
          line(line_), column(column_) {}
};

}  // namespace dcurve
