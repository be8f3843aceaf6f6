#include "mimostab/rational.hpp"

#include <cmath>
#include <sstream>

#include "mimostab/errors.hpp"

namespace mimostab {

RationalFunction::RationalFunction() : num_(), den_(Polynomial::one()) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den, const Tolerances& tol)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZeroFunctionError();
    reduce(tol);
}

RationalFunction RationalFunction::constant(double c) {
    return RationalFunction(Polynomial::constant(c), Polynomial::one());
}

namespace {

// Cancel the common roots of a and b. The lower-degree side supplies the
// candidate locations (cluster centroids); the shared multiplicity at each
// location is decided on both sides by the evaluation-residual test inside
// strip_known_root, which stays reliable where multiplicity clustering of
// high-degree polynomials does not. Returns false (outputs untouched) when
// nothing cancels.
bool cancel_common_roots(const Polynomial& a, const Polynomial& b, const Tolerances& tol,
                         Polynomial* a_out, Polynomial* b_out) {
    if (a.degree() < 1 || b.degree() < 1) return false;
    const RootSet candidates = (a.degree() <= b.degree()) ? a.roots(tol) : b.roots(tol);
    Polynomial aw = a, bw = b;
    bool cancelled = false;
    for (const auto& r : candidates) {
        if (r.location.imag() < 0.0) continue;  // quadratics consume the pair
        const int cap = std::min(aw.degree(), bw.degree());
        if (cap < 1) break;
        const auto [as, ca] = strip_known_root(aw, r.location, cap);
        if (ca == 0) continue;
        const auto [bs, cb] = strip_known_root(bw, r.location, cap);
        if (cb == 0) continue;
        const int c = std::min(ca, cb);
        aw = strip_known_root(aw, r.location, c).first;
        bw = strip_known_root(bw, r.location, c).first;
        cancelled = true;
    }
    if (!cancelled) return false;
    *a_out = std::move(aw);
    *b_out = std::move(bw);
    return true;
}

} // namespace

void RationalFunction::reduce(const Tolerances& tol) {
    if (num_.is_zero()) {
        den_ = Polynomial::one();
        return;
    }
    Polynomial n, d;
    if (cancel_common_roots(num_, den_, tol, &n, &d)) {
        num_ = std::move(n);
        den_ = std::move(d);
    }
    const double lead = den_.leading();
    num_ = num_ * (1.0 / lead);
    den_ = den_ * (1.0 / lead);
}

int RationalFunction::relative_degree() const { return den_.degree() - num_.degree(); }

RationalFunction RationalFunction::operator+(const RationalFunction& rhs) const {
    if (is_zero()) return rhs;
    if (rhs.is_zero()) return *this;
    // Equal denominators keep coefficient cancellations exact; otherwise
    // combine over the near-LCM den1 * (den2 / gcd).
    if (den_.almost_equal(rhs.den_, 1e-14)) {
        return RationalFunction(num_ + rhs.num_, den_);
    }
    // Combine over the near-LCM: n1*(d2/g) + n2*(d1/g) over d1*(d2/g).
    Polynomial d1r, d2r;
    if (cancel_common_roots(den_, rhs.den_, Tolerances::standard(), &d1r, &d2r)) {
        return RationalFunction(num_ * d2r + rhs.num_ * d1r, den_ * d2r);
    }
    return RationalFunction(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& rhs) const {
    return *this + (-rhs);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    return out;
}

RationalFunction RationalFunction::operator*(const RationalFunction& rhs) const {
    if (is_zero() || rhs.is_zero()) return RationalFunction();
    // Cross-cancel before multiplying to keep degrees down.
    Polynomial n1 = num_, d2 = rhs.den_, n2 = rhs.num_, d1 = den_;
    Polynomial ca, cb;
    if (cancel_common_roots(n1, d2, Tolerances::standard(), &ca, &cb)) {
        n1 = ca;
        d2 = cb;
    }
    if (cancel_common_roots(n2, d1, Tolerances::standard(), &ca, &cb)) {
        n2 = ca;
        d1 = cb;
    }
    return RationalFunction(n1 * n2, d1 * d2);
}

RationalFunction RationalFunction::operator/(const RationalFunction& rhs) const {
    if (rhs.is_zero()) throw DivisionByZeroFunctionError();
    return *this * RationalFunction(rhs.den_, rhs.num_);
}

RationalFunction RationalFunction::operator*(double scalar) const {
    if (scalar == 0.0) return RationalFunction();
    RationalFunction out = *this;
    out.num_ = out.num_ * scalar;
    return out;
}

Complex RationalFunction::eval(Complex s, const Tolerances& tol) const {
    const Complex d = den_.eval(s);
    if (std::abs(d) <= tol.pole_guard)
        throw PoleEvaluationError("evaluation at a pole: |den(s)| = " + std::to_string(std::abs(d)));
    return num_.eval(s) / d;
}

std::optional<double> RationalFunction::limit_at_infinity() const {
    if (is_zero()) return 0.0;
    const int rd = relative_degree();
    if (rd > 0) return 0.0;
    if (rd == 0) return num_.leading() / den_.leading();
    return std::nullopt;
}

RootSet RationalFunction::poles(const Tolerances& tol) const {
    if (den_.degree() < 1) return {};
    return den_.roots(tol);
}

RootSet RationalFunction::zeros(const Tolerances& tol) const {
    if (num_.is_zero() || num_.degree() < 1) return {};
    return num_.roots(tol);
}

bool RationalFunction::almost_equal(const RationalFunction& rhs, double tol) const {
    // Cross-multiplied comparison, scaled so that a function whose numerator
    // is negligible against its denominator compares equal to zero.
    const Polynomial lhs_x = num_ * rhs.den_;
    const Polynomial rhs_x = rhs.num_ * den_;
    const double scale = 1.0 + std::max({lhs_x.max_abs_coefficient(), rhs_x.max_abs_coefficient(),
                                         (den_ * rhs.den_).max_abs_coefficient()});
    const Polynomial diff = lhs_x - rhs_x;
    return diff.max_abs_coefficient() <= tol * scale;
}

std::string RationalFunction::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    if (den_.degree() == 0 && den_.leading() == 1.0) {
        os << num_.str();
    } else {
        os << "(" << num_.str() << ") / (" << den_.str() << ")";
    }
    return os.str();
}

} // namespace mimostab
