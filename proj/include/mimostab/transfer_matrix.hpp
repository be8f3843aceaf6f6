#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mimostab/poly_matrix.hpp"
#include "mimostab/rational.hpp"

namespace mimostab {

/// Outcome of a stability test. Marginal is its own status: poles inside the
/// band |Re| <= marginal_band are never silently folded into Stable.
enum class StabilityStatus { Stable, Unstable, Marginal };

std::string to_string(StabilityStatus s);

struct Verdict {
    StabilityStatus status = StabilityStatus::Stable;
    /// Poles in the (band-adjusted) closed right half plane; empty iff Stable.
    RootSet witness_poles;
    /// Label of the test that produced the verdict.
    std::string method;

    bool stable() const { return status == StabilityStatus::Stable; }
};

/// Classify a pole set against the marginal band and build a Verdict.
Verdict classify_poles(const RootSet& poles, const std::string& method,
                       const Tolerances& tol = Tolerances::standard());

/// Dense matrix of rational functions, row-major.
class TransferMatrix {
  public:
    TransferMatrix() : rows_(0), cols_(0) {}
    TransferMatrix(int rows, int cols);
    explicit TransferMatrix(std::vector<std::vector<RationalFunction>> grid);
    static TransferMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_ && rows_ > 0; }

    RationalFunction& at(int i, int j);
    const RationalFunction& at(int i, int j) const;
    const RationalFunction& operator()(int i, int j) const { return at(i, j); }

    bool is_zero() const;
    bool is_proper() const;

    TransferMatrix operator+(const TransferMatrix& rhs) const;
    TransferMatrix operator-(const TransferMatrix& rhs) const;
    TransferMatrix operator*(const TransferMatrix& rhs) const;
    TransferMatrix operator*(double scalar) const;
    TransferMatrix operator*(const RationalFunction& f) const;
    TransferMatrix transpose() const;

    /// Entrywise evaluation at a complex point. PoleEvaluationError carries
    /// the offending entry index.
    Eigen::MatrixXcd eval(Complex s, const Tolerances& tol = Tolerances::standard()) const;

    /// Entrywise limit as |s| -> infinity; throws Error if any entry is improper.
    Eigen::MatrixXd limit_at_infinity() const;

    /// Determinant by cofactor expansion over rational functions, reduced.
    RationalFunction det() const;

    /// Adjugate/determinant inverse for n <= 4, fraction-free Gaussian
    /// elimination above. Throws SingularMatrixError when det is identically 0.
    TransferMatrix inverse() const;

    /// Common-denominator form: returns (M, q) with this = M(s)/q(s), q the
    /// monic LCM of the entry denominators. The fraction-free backbone of
    /// det/inverse/closed-loop computations.
    std::pair<PolyMatrix, Polynomial> common_denominator(
        const Tolerances& tol = Tolerances::standard()) const;

    /// Union of entry-pole locations (per-location maximum multiplicity).
    RootSet entry_poles(const Tolerances& tol = Tolerances::standard()) const;

    /// True when every entry pole satisfies Re < -marginal_band.
    bool is_stable(const Tolerances& tol = Tolerances::standard()) const;

    /// Characteristic-polynomial coefficients of det(lambda I - P), ascending
    /// in lambda, computed exactly over the rational-function field. The
    /// leading (monic) coefficient 1 is included.
    std::vector<RationalFunction> charpoly_coefficients() const;

  private:
    int rows_, cols_;
    std::vector<RationalFunction> entries_;
};

struct ClosedLoop {
    TransferMatrix sensitivity;    ///< (I + P U)^{-1}
    TransferMatrix complementary;  ///< P U (I + P U)^{-1}
};

/// Closed-loop maps of the standard negative-feedback loop with loop gain
/// P U (U = identity when absent). Throws SingularLoopError when det(I + P U)
/// is identically zero.
ClosedLoop closed_loop(const TransferMatrix& P,
                       const TransferMatrix* U = nullptr,
                       const Tolerances& tol = Tolerances::standard());

/// Ground-truth stability verdict: the union of the poles of the n^2 entries
/// of the reduced sensitivity matrix, classified against the marginal band.
Verdict direct_stability(const TransferMatrix& P,
                         const TransferMatrix* U = nullptr,
                         const Tolerances& tol = Tolerances::standard());

} // namespace mimostab
