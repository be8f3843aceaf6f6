#pragma once

#include <optional>
#include <string>

#include "mimostab/polynomial.hpp"
#include "mimostab/tolerances.hpp"

namespace mimostab {

/// Real rational function num(s)/den(s), kept in reduced form: num and den
/// coprime up to the GCD tolerance and den monic. The zero function is 0/1.
class RationalFunction {
  public:
    /// The zero function.
    RationalFunction();
    RationalFunction(Polynomial num, Polynomial den,
                     const Tolerances& tol = Tolerances::standard());
    /// Constant c/1.
    static RationalFunction constant(double c);
    static RationalFunction zero() { return RationalFunction(); }
    static RationalFunction one() { return constant(1.0); }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// degree(den) - degree(num); > 0 for strictly proper, 0 = biproper.
    int relative_degree() const;
    bool is_proper() const { return is_zero() || relative_degree() >= 0; }

    RationalFunction operator+(const RationalFunction& rhs) const;
    RationalFunction operator-(const RationalFunction& rhs) const;
    RationalFunction operator*(const RationalFunction& rhs) const;
    RationalFunction operator/(const RationalFunction& rhs) const;
    RationalFunction operator-() const;
    RationalFunction operator*(double scalar) const;

    /// Horner evaluation num(s)/den(s); raises PoleEvaluationError when
    /// |den(s)| is below the pole guard.
    Complex eval(Complex s, const Tolerances& tol = Tolerances::standard()) const;

    /// Finite limit as |s| -> infinity: 0 for strictly proper, leading-ratio
    /// for biproper; nullopt when improper.
    std::optional<double> limit_at_infinity() const;

    RootSet poles(const Tolerances& tol = Tolerances::standard()) const;
    RootSet zeros(const Tolerances& tol = Tolerances::standard()) const;

    /// Equality as functions: cross-multiplied coefficient comparison.
    bool almost_equal(const RationalFunction& rhs, double tol) const;

    std::string str() const;

  private:
    void reduce(const Tolerances& tol);
    Polynomial num_;
    Polynomial den_;
};

inline RationalFunction operator*(double s, const RationalFunction& f) { return f * s; }

} // namespace mimostab
