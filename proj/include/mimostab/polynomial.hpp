#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "mimostab/tolerances.hpp"

namespace mimostab {

using Complex = std::complex<double>;

/// One root location with its multiplicity.
struct Root {
    Complex location;
    int multiplicity = 1;
};

/// Roots of a polynomial, clustered so that a k-fold root appears once with
/// multiplicity k. Conjugate-closed for real-coefficient inputs.
using RootSet = std::vector<Root>;

int total_multiplicity(const RootSet& roots);

/// Real-coefficient univariate polynomial in s, stored in ascending degree
/// order (coefficients()[i] multiplies s^i). The zero polynomial has an
/// empty coefficient vector; otherwise the trailing coefficient is nonzero.
class Polynomial {
  public:
    Polynomial() = default;
    Polynomial(std::initializer_list<double> coeffs_ascending);
    explicit Polynomial(std::vector<double> coeffs_ascending);

    static Polynomial zero() { return Polynomial(); }
    static Polynomial one() { return Polynomial({1.0}); }
    static Polynomial constant(double c) { return Polynomial({c}); }
    /// The monomial s.
    static Polynomial variable() { return Polynomial({0.0, 1.0}); }

    /// Expand a real polynomial from a conjugate-closed root set.
    /// Conjugate pairs are combined into real quadratic factors.
    static Polynomial from_roots(const RootSet& roots, double leading = 1.0);

    const std::vector<double>& coefficients() const { return coeffs_; }
    /// Degree, or -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    double leading() const;
    double coefficient(int i) const;
    double max_abs_coefficient() const;

    Polynomial monic() const;
    Polynomial derivative() const;

    Complex eval(Complex s) const;
    double eval(double s) const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(double scalar) const;
    Polynomial operator-() const;

    /// Long division: returns {quotient, remainder}.
    std::pair<Polynomial, Polynomial> divide(const Polynomial& divisor) const;

    /// Coefficient-wise comparison with absolute tolerance scaled by the
    /// larger coefficient magnitude of the pair.
    bool almost_equal(const Polynomial& rhs, double tol) const;

    /// All complex roots with multiplicities (companion-matrix method with
    /// balancing; closed forms for degrees 1 and 2). Clustered at
    /// tol.root_cluster_rel and conjugate-symmetrized.
    RootSet roots(const Tolerances& tol = Tolerances::standard()) const;

    /// Human-readable form, e.g. "s^2 + 3s + 2".
    std::string str() const;

  private:
    void trim();
    std::vector<double> coeffs_;
};

inline Polynomial operator*(double scalar, const Polynomial& p) { return p * scalar; }

/// Monic approximate greatest common divisor by root matching: roots of a and
/// b within the matching tolerance are treated as shared factors.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b,
                    const Tolerances& tol = Tolerances::standard());

/// Monic least common multiple built from the union of root multisets.
Polynomial poly_lcm(const Polynomial& a, const Polynomial& b,
                    const Tolerances& tol = Tolerances::standard());

/// Cluster a raw root list into a RootSet (relative tolerance), then enforce
/// conjugate closure when `real_coefficients` is set.
RootSet cluster_roots(const std::vector<Complex>& raw, const Tolerances& tol,
                      bool real_coefficients);

/// Flatten a RootSet back into one entry per multiplicity.
std::vector<Complex> expand_roots(const RootSet& roots);

/// Roots of a complex-coefficient polynomial (ascending coefficients).
/// Nearly coincident roots are snapped together so repeated eigenvalues stay
/// repeated; used by the eigenvalue-locus and complex-gain machinery.
std::vector<Complex> complex_poly_roots(const std::vector<Complex>& coeffs_ascending,
                                        const Tolerances& tol = Tolerances::standard());

/// How many times (s - z) divides p, decided by an evaluation residual test
/// at the known location z (conjugate quadratic for complex z, so the count
/// is a pair count). Returns the deflated polynomial and the count (<= cap).
/// Exact multiplicity handling for roots whose locations are known from a
/// better-conditioned source; no clustering involved.
std::pair<Polynomial, int> strip_known_root(const Polynomial& p, Complex z, int cap,
                                            double rel_eps = 1e-12);

} // namespace mimostab
