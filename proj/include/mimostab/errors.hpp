#pragma once

#include <stdexcept>
#include <string>

namespace mimostab {

/// Base class for all analysis errors raised by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ZeroPolynomialError : public Error {
  public:
    ZeroPolynomialError() : Error("operation undefined for the zero polynomial") {}
};

class DivisionByZeroFunctionError : public Error {
  public:
    DivisionByZeroFunctionError() : Error("division by the zero rational function") {}
};

/// Evaluation requested at (or too close to) a pole. Carries the offending
/// matrix entry when raised from a transfer-matrix evaluation.
class PoleEvaluationError : public Error {
  public:
    explicit PoleEvaluationError(const std::string& msg) : Error(msg), row(-1), col(-1) {}
    PoleEvaluationError(const std::string& msg, int r, int c) : Error(msg), row(r), col(c) {}
    int row;
    int col;
};

class NotSquareError : public Error {
  public:
    NotSquareError() : Error("operation requires a square transfer matrix") {}
};

class SingularMatrixError : public Error {
  public:
    SingularMatrixError() : Error("transfer matrix is singular (determinant identically zero)") {}
};

/// det(I + P U) is identically zero: the feedback interconnection is ill posed.
class SingularLoopError : public Error {
  public:
    SingularLoopError() : Error("ill-posed interconnection: det(I + P U) is identically zero") {}
};

class ZeroMatrixError : public Error {
  public:
    ZeroMatrixError() : Error("operation undefined for the zero transfer matrix") {}
};

class EigenSolveFailureError : public Error {
  public:
    explicit EigenSolveFailureError(double omega)
        : Error("eigenvalue solve failed at omega = " + std::to_string(omega)), omega(omega) {}
    double omega;
};

class PointOnCurveError : public Error {
  public:
    PointOnCurveError() : Error("curve passes through the test point; winding number undefined") {}
};

class ClosureFailureError : public Error {
  public:
    explicit ClosureFailureError(double gap)
        : Error("could not close eigenvalue loci into curves (endpoint gap " + std::to_string(gap) + ")"),
          gap(gap) {}
    double gap;
};

class NominalUnstableError : public Error {
  public:
    NominalUnstableError() : Error("nominal closed loop (U = I) is not stable") {}
};

/// H-infinity norm (and the mixed band test) are undefined for unstable operands.
class UnstableOperandError : public Error {
  public:
    UnstableOperandError() : Error("operand has poles in the closed right half plane") {}
};

class RepeatedAxisPoleError : public Error {
  public:
    explicit RepeatedAxisPoleError(double omega0)
        : Error("repeated imaginary-axis pole at omega = " + std::to_string(omega0) +
                "; positive-real residue test requires simple axis poles"),
          omega0(omega0) {}
    double omega0;
};

class ParseError : public Error {
  public:
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string& msg) : Error("invalid system description: " + msg) {}
};

} // namespace mimostab
