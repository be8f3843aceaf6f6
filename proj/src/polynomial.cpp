#include "mimostab/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mimostab/errors.hpp"

namespace mimostab {

namespace {

constexpr double kTinyAbs = 1e-300;

double scale_of(const std::vector<double>& c) {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

// Parlett-Reinsch style balancing with radix-2 scaling. Companion matrices of
// polynomials with wide coefficient ranges benefit noticeably.
void balance_matrix(Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    const double radix = 2.0;
    bool converged = false;
    int guard = 0;
    while (!converged && guard++ < 50) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c < kTinyAbs || r < kTinyAbs) continue;
            double f = 1.0;
            double s = c + r;
            while (c < r / radix) {
                c *= radix;
                r /= radix;
                f *= radix;
            }
            while (c >= r * radix) {
                c /= radix;
                r *= radix;
                f /= radix;
            }
            if ((c + r) < 0.95 * s) {
                converged = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

std::vector<Complex> quadratic_roots(double c0, double c1, double c2) {
    // Numerically stable quadratic formula; exact for exact discriminants.
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (c1 + (c1 >= 0.0 ? sq : -sq));
        Complex r1, r2;
        if (std::abs(q) > kTinyAbs) {
            r1 = Complex(q / c2, 0.0);
            r2 = Complex(c0 / q, 0.0);
        } else {
            r1 = Complex(-c1 / (2.0 * c2), 0.0);
            r2 = r1;
        }
        return {r1, r2};
    }
    const double re = -c1 / (2.0 * c2);
    const double im = std::sqrt(-disc) / (2.0 * c2);
    return {Complex(re, im), Complex(re, -im)};
}

} // namespace

int total_multiplicity(const RootSet& roots) {
    int n = 0;
    for (const auto& r : roots) n += r.multiplicity;
    return n;
}

Polynomial::Polynomial(std::initializer_list<double> coeffs_ascending)
    : coeffs_(coeffs_ascending) {
    trim();
}

Polynomial::Polynomial(std::vector<double> coeffs_ascending) : coeffs_(std::move(coeffs_ascending)) {
    trim();
}

void Polynomial::trim() {
    // A trailing coefficient is noise when it is negligible against its
    // neighbors, not against the global maximum: polynomials with widely
    // spread roots have legitimately tiny leading coefficients relative to
    // their largest one.
    const double rel = Tolerances::standard().coeff_trim_rel;
    while (!coeffs_.empty()) {
        const size_t k = coeffs_.size() - 1;
        const double c = std::abs(coeffs_[k]);
        if (c == 0.0) {
            coeffs_.pop_back();
            continue;
        }
        double neighbor = 0.0;
        if (k >= 1) neighbor = std::abs(coeffs_[k - 1]);
        if (k >= 2) neighbor = std::max(neighbor, std::abs(coeffs_[k - 2]));
        if (neighbor > 0.0 && c <= rel * neighbor) {
            coeffs_.pop_back();
            continue;
        }
        break;
    }
}

double Polynomial::leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

double Polynomial::coefficient(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<size_t>(i)];
}

double Polynomial::max_abs_coefficient() const { return scale_of(coeffs_); }

Polynomial Polynomial::monic() const {
    if (is_zero()) throw ZeroPolynomialError();
    return *this * (1.0 / leading());
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<double> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
}

Complex Polynomial::eval(Complex s) const {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

double Polynomial::eval(double s) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<double> out(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (size_t i = 0; i < rhs.coeffs_.size(); ++i) out[i] += rhs.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator-() const {
    std::vector<double> out(coeffs_);
    for (double& v : out) v = -v;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (is_zero() || rhs.is_zero()) return Polynomial();
    std::vector<double> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(double scalar) const {
    if (scalar == 0.0) return Polynomial();
    std::vector<double> out(coeffs_);
    for (double& v : out) v *= scalar;
    return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divide(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw ZeroPolynomialError();
    if (degree() < divisor.degree()) return {Polynomial(), *this};
    std::vector<double> rem(coeffs_);
    std::vector<double> quot(static_cast<size_t>(degree() - divisor.degree()) + 1, 0.0);
    const double lead = divisor.leading();
    for (int k = degree() - divisor.degree(); k >= 0; --k) {
        const double q = rem[static_cast<size_t>(k + divisor.degree())] / lead;
        quot[static_cast<size_t>(k)] = q;
        for (int j = 0; j <= divisor.degree(); ++j)
            rem[static_cast<size_t>(k + j)] -= q * divisor.coefficient(j);
    }
    rem.resize(static_cast<size_t>(std::max(divisor.degree(), 1)));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

bool Polynomial::almost_equal(const Polynomial& rhs, double tol) const {
    const double scale = 1.0 + std::max(max_abs_coefficient(), rhs.max_abs_coefficient());
    const size_t n = std::max(coeffs_.size(), rhs.coeffs_.size());
    for (size_t i = 0; i < n; ++i)
        if (std::abs(coefficient(static_cast<int>(i)) - rhs.coefficient(static_cast<int>(i))) >
            tol * scale)
            return false;
    return true;
}

Polynomial Polynomial::from_roots(const RootSet& roots, double leading) {
    Polynomial p = Polynomial::constant(leading);
    // Real roots become linear factors; conjugate pairs are combined into
    // real quadratics so the expansion stays real.
    std::vector<Root> pending;
    for (const auto& r : roots) pending.push_back(r);
    std::vector<bool> used(pending.size(), false);
    for (size_t i = 0; i < pending.size(); ++i) {
        if (used[i]) continue;
        const Complex z = pending[i].location;
        if (z.imag() == 0.0) {
            for (int m = 0; m < pending[i].multiplicity; ++m)
                p = p * Polynomial({-z.real(), 1.0});
            used[i] = true;
            continue;
        }
        // Find the conjugate partner.
        size_t partner = i;
        double best = std::numeric_limits<double>::max();
        for (size_t j = i + 1; j < pending.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(pending[j].location - std::conj(z));
            if (d < best) {
                best = d;
                partner = j;
            }
        }
        if (partner != i && best <= 1e-6 * (1.0 + std::abs(z))) {
            const Complex zm = 0.5 * (z + std::conj(pending[partner].location));
            const int m = std::min(pending[i].multiplicity, pending[partner].multiplicity);
            for (int k = 0; k < m; ++k)
                p = p * Polynomial({std::norm(zm), -2.0 * zm.real(), 1.0});
            used[i] = used[partner] = true;
        } else {
            // No partner found: fall back to the real quadratic with this
            // root and its conjugate (keeps the output real).
            for (int k = 0; k < pending[i].multiplicity; ++k)
                p = p * Polynomial({std::norm(z), -2.0 * z.real(), 1.0});
            used[i] = true;
        }
    }
    return p;
}

RootSet cluster_roots(const std::vector<Complex>& raw, const Tolerances& tol,
                      bool real_coefficients) {
    const size_t n = raw.size();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const double scale = std::max({1.0, std::abs(raw[i]), std::abs(raw[j])});
            if (std::abs(raw[i] - raw[j]) <= tol.root_cluster_rel * scale)
                parent[find(i)] = find(j);
        }
    std::vector<Root> clusters;
    std::vector<size_t> rep;
    for (size_t i = 0; i < n; ++i) {
        const size_t r = find(i);
        auto it = std::find(rep.begin(), rep.end(), r);
        if (it == rep.end()) {
            rep.push_back(r);
            clusters.push_back({raw[i], 1});
        } else {
            auto& c = clusters[static_cast<size_t>(it - rep.begin())];
            // Running centroid; symmetric splits of a multiple root cancel.
            c.location += (raw[i] - c.location) / static_cast<double>(c.multiplicity + 1);
            c.multiplicity += 1;
        }
    }
    if (real_coefficients) {
        for (auto& c : clusters) {
            const double s = 1.0 + std::abs(c.location);
            if (std::abs(c.location.imag()) <= tol.root_cluster_rel * s)
                c.location = Complex(c.location.real(), 0.0);
        }
        // Symmetrize conjugate pairs.
        std::vector<bool> done(clusters.size(), false);
        for (size_t i = 0; i < clusters.size(); ++i) {
            if (done[i] || clusters[i].location.imag() == 0.0) continue;
            for (size_t j = 0; j < clusters.size(); ++j) {
                if (j == i || done[j]) continue;
                const double s = 1.0 + std::abs(clusters[i].location);
                if (std::abs(clusters[j].location - std::conj(clusters[i].location)) <=
                        tol.root_cluster_rel * s * 10.0 &&
                    clusters[j].multiplicity == clusters[i].multiplicity) {
                    const Complex zm =
                        0.5 * (clusters[i].location + std::conj(clusters[j].location));
                    clusters[i].location = zm;
                    clusters[j].location = std::conj(zm);
                    done[i] = done[j] = true;
                    break;
                }
            }
        }
    }
    std::sort(clusters.begin(), clusters.end(), [](const Root& a, const Root& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return clusters;
}

std::vector<Complex> expand_roots(const RootSet& roots) {
    std::vector<Complex> out;
    for (const auto& r : roots)
        for (int i = 0; i < r.multiplicity; ++i) out.push_back(r.location);
    return out;
}

RootSet Polynomial::roots(const Tolerances& tol) const {
    if (is_zero()) throw ZeroPolynomialError();
    const int deg = degree();
    if (deg == 0) return {};
    std::vector<Complex> raw;
    if (deg == 1) {
        raw.push_back(Complex(-coeffs_[0] / coeffs_[1], 0.0));
    } else if (deg == 2) {
        raw = quadratic_roots(coeffs_[0], coeffs_[1], coeffs_[2]);
    } else {
        // Balanced companion matrix.
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(deg, deg);
        const double lead = coeffs_.back();
        for (int i = 1; i < deg; ++i) a(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i) a(i, deg - 1) = -coeffs_[static_cast<size_t>(i)] / lead;
        balance_matrix(a);
        Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
        if (solver.info() != Eigen::Success) throw EigenSolveFailureError(0.0);
        for (int i = 0; i < deg; ++i) raw.push_back(solver.eigenvalues()(i));
    }
    return cluster_roots(raw, tol, /*real_coefficients=*/true);
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const double c = coefficient(i);
        if (c == 0.0 && degree() > 0) continue;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        const double a = std::abs(c);
        if (i == 0 || a != 1.0) os << a;
        if (i >= 1) os << "s";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

namespace {

struct MatchedRoot {
    Complex location;
    int multiplicity;
};

// Greedy nearest matching of two clustered root sets within the absolute
// matching tolerance (scaled by 1 + |root|).
std::vector<MatchedRoot> match_roots(const RootSet& ra, const RootSet& rb, double match_tol) {
    std::vector<MatchedRoot> shared;
    std::vector<int> remaining(rb.size());
    for (size_t j = 0; j < rb.size(); ++j) remaining[j] = rb[j].multiplicity;
    for (const auto& a : ra) {
        double best = std::numeric_limits<double>::max();
        int best_j = -1;
        for (size_t j = 0; j < rb.size(); ++j) {
            if (remaining[j] == 0) continue;
            const double d = std::abs(a.location - rb[j].location);
            if (d < best) {
                best = d;
                best_j = static_cast<int>(j);
            }
        }
        if (best_j < 0) continue;
        const double thresh = match_tol * (1.0 + std::abs(a.location));
        if (best > thresh) continue;
        const auto& b = rb[static_cast<size_t>(best_j)];
        const int m = std::min(a.multiplicity, remaining[static_cast<size_t>(best_j)]);
        const double wa = static_cast<double>(a.multiplicity);
        const double wb = static_cast<double>(b.multiplicity);
        shared.push_back({(a.location * wa + b.location * wb) / (wa + wb), m});
        remaining[static_cast<size_t>(best_j)] -= m;
    }
    return shared;
}

} // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b, const Tolerances& tol) {
    if (a.is_zero() && b.is_zero()) throw ZeroPolynomialError();
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return Polynomial::one();
    const RootSet ra = a.roots(tol);
    const RootSet rb = b.roots(tol);
    const auto shared = match_roots(ra, rb, tol.root_match);
    if (shared.empty()) return Polynomial::one();
    RootSet g;
    for (const auto& m : shared) g.push_back({m.location, m.multiplicity});
    return Polynomial::from_roots(cluster_roots(expand_roots(g), tol, true), 1.0);
}

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b, const Tolerances& tol) {
    if (a.is_zero() || b.is_zero()) throw ZeroPolynomialError();
    if (a.degree() == 0) return b.monic();
    if (b.degree() == 0) return a.monic();
    const RootSet ra = a.roots(tol);
    const RootSet rb = b.roots(tol);
    // Union with per-location maximum multiplicity.
    RootSet uni = ra;
    for (const auto& rbj : rb) {
        bool matched = false;
        for (auto& u : uni) {
            if (std::abs(u.location - rbj.location) <=
                tol.root_match * (1.0 + std::abs(u.location))) {
                u.multiplicity = std::max(u.multiplicity, rbj.multiplicity);
                matched = true;
                break;
            }
        }
        if (!matched) uni.push_back(rbj);
    }
    return Polynomial::from_roots(uni, 1.0);
}

namespace {

// Horner value of p at z plus the matching magnitude accumulation (the scale
// of the Horner rounding bound).
std::pair<Complex, double> eval_with_magnitude(const Polynomial& p, Complex z) {
    Complex acc(0.0, 0.0);
    double mag = 0.0;
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * z + *it;
        mag = mag * std::abs(z) + std::abs(*it);
    }
    return {acc, mag + 1e-300};
}

// Deflate one (real) root or one conjugate pair. Forward deflation runs from
// the leading coefficient and is stable for |z| <= 1; for |z| > 1 the error
// would grow like |z|^degree toward the constant term, so the division is
// run backward from the constant term instead (Wilkinson's rule).
Polynomial deflate_once(const Polynomial& p, Complex z) {
    const auto& c = p.coefficients();
    const size_t n = c.size();
    if (z.imag() == 0.0) {
        const double r = z.real();
        std::vector<double> q(n - 1);
        if (std::abs(r) <= 1.0) {
            double carry = c.back();
            for (int i = static_cast<int>(n) - 2; i >= 0; --i) {
                q[static_cast<size_t>(i)] = carry;
                carry = c[static_cast<size_t>(i)] + r * carry;
            }
        } else {
            // p = (s - r) q: c_i = q_{i-1} - r q_i, solved upward.
            q[0] = -c[0] / r;
            for (size_t i = 1; i + 1 < n; ++i) q[i] = (q[i - 1] - c[i]) / r;
        }
        return Polynomial(std::move(q));
    }
    const double d0 = std::norm(z);
    const double d1 = -2.0 * z.real();
    if (n < 3) return Polynomial();
    std::vector<double> q(n - 2);
    if (std::abs(z) <= 1.0) {
        // long division from the top by s^2 + d1 s + d0
        std::vector<double> rem(c);
        for (int k = static_cast<int>(n) - 3; k >= 0; --k) {
            const double f = rem[static_cast<size_t>(k + 2)];
            q[static_cast<size_t>(k)] = f;
            rem[static_cast<size_t>(k + 1)] -= f * d1;
            rem[static_cast<size_t>(k)] -= f * d0;
        }
    } else {
        // from the bottom: c_i = d0 q_i + d1 q_{i-1} + q_{i-2}
        q[0] = c[0] / d0;
        if (n > 3) q[1] = (c[1] - d1 * q[0]) / d0;
        for (size_t i = 2; i + 2 < n; ++i) q[i] = (c[i] - d1 * q[i - 1] - q[i - 2]) / d0;
    }
    return Polynomial(std::move(q));
}

} // namespace

std::pair<Polynomial, int> strip_known_root(const Polynomial& p, Complex z, int cap,
                                            double rel_eps) {
    Polynomial cur = p;
    int count = 0;
    const bool is_real = z.imag() == 0.0;
    while (count < cap && cur.degree() >= (is_real ? 1 : 2)) {
        // The accumulated Horner magnitude is the scale of the evaluation
        // rounding bound (~deg * eps * mag); a true root lands orders of
        // magnitude below rel_eps * mag, a non-root orders above.
        const auto [val, mag] = eval_with_magnitude(cur, z);
        if (std::abs(val) <= rel_eps * mag) {
            cur = deflate_once(cur, z);
            ++count;
            continue;
        }
        // Newton rescue: the polynomial may carry this factor at a location
        // displaced by upstream rounding. Polish toward it; accept only if
        // the step stays tiny and the residual then collapses.
        const Complex dval = cur.derivative().eval(z);
        if (std::abs(dval) > 0.0) {
            Complex zr = z - val / dval;
            if (std::abs(zr - z) <= 1e-7 * (1.0 + std::abs(z))) {
                const auto [v1, m1] = eval_with_magnitude(cur, zr);
                const Complex d1 = cur.derivative().eval(zr);
                if (std::abs(d1) > 0.0 && std::abs(v1 / d1) < std::abs(zr - z)) zr = zr - v1 / d1;
                if (is_real) zr = Complex(zr.real(), 0.0);
                const auto [v2, m2] = eval_with_magnitude(cur, zr);
                if (std::abs(v2) <= 10.0 * rel_eps * m2) {
                    cur = deflate_once(cur, zr);
                    ++count;
                    continue;
                }
            }
        }
        break;
    }
    return {cur, count};
}

std::vector<Complex> complex_poly_roots(const std::vector<Complex>& coeffs_ascending,
                                        const Tolerances& tol) {
    // Trim trailing near-zero coefficients.
    std::vector<Complex> c = coeffs_ascending;
    double scale = 0.0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    while (!c.empty() && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
    if (c.size() <= 1) return {};
    const size_t deg = c.size() - 1;
    std::vector<Complex> raw;
    if (deg == 1) {
        raw.push_back(-c[0] / c[1]);
    } else if (deg == 2) {
        // Snap tiny discriminants to zero so repeated eigenvalues stay exactly
        // repeated instead of splitting by sqrt(rounding noise).
        Complex disc = c[1] * c[1] - 4.0 * c[2] * c[0];
        const double dscale = std::norm(c[1]) + 4.0 * std::abs(c[2]) * std::abs(c[0]);
        if (std::abs(disc) <= 1e-12 * dscale) disc = Complex(0.0, 0.0);
        const Complex sq = std::sqrt(disc);
        const Complex q = -0.5 * (c[1] + (std::real(std::conj(c[1]) * sq) >= 0.0 ? sq : -sq));
        if (std::abs(q) > kTinyAbs) {
            raw.push_back(q / c[2]);
            raw.push_back(c[0] / q);
        } else {
            raw.push_back(-c[1] / (2.0 * c[2]));
            raw.push_back(raw[0]);
        }
    } else {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<int>(deg), static_cast<int>(deg));
        for (size_t i = 1; i < deg; ++i) a(static_cast<int>(i), static_cast<int>(i - 1)) = 1.0;
        for (size_t i = 0; i < deg; ++i)
            a(static_cast<int>(i), static_cast<int>(deg - 1)) = -c[i] / c[deg];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
        if (solver.info() != Eigen::Success) throw EigenSolveFailureError(0.0);
        for (int i = 0; i < static_cast<int>(deg); ++i) raw.push_back(solver.eigenvalues()(i));
        // Collapse near-coincident roots onto their centroid.
        for (size_t i = 0; i < raw.size(); ++i) {
            std::vector<size_t> group{i};
            for (size_t j = i + 1; j < raw.size(); ++j) {
                const double s = std::max({1.0, std::abs(raw[i]), std::abs(raw[j])});
                if (std::abs(raw[i] - raw[j]) <= tol.root_cluster_rel * s) group.push_back(j);
            }
            if (group.size() > 1) {
                Complex mean(0.0, 0.0);
                for (size_t g : group) mean += raw[g];
                mean /= static_cast<double>(group.size());
                for (size_t g : group) raw[g] = mean;
            }
        }
    }
    return raw;
}

} // namespace mimostab
