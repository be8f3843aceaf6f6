#include "mimostab/smith_mcmillan.hpp"

#include <algorithm>
#include <cmath>

#include "mimostab/errors.hpp"

namespace mimostab {

namespace {

// A polynomial counts as zero here when its coefficients are negligible
// against the largest minor seen at this size.
bool negligible(const Polynomial& p, double scale) {
    return p.is_zero() || p.max_abs_coefficient() <= 1e-10 * scale;
}

// Quotient of two polynomials known to divide (up to tolerance): build from
// the root-multiset difference, which is far more stable than long division
// when the inputs came from clustered roots.
Polynomial divide_by_roots(const Polynomial& num, const Polynomial& den, const Tolerances& tol) {
    if (den.degree() == 0) return num.monic();
    const RootSet rn = num.roots(tol);
    const RootSet rd = den.roots(tol);
    RootSet diff;
    std::vector<int> remaining;
    for (const auto& r : rd) remaining.push_back(r.multiplicity);
    for (const auto& r : rn) {
        int mult = r.multiplicity;
        for (size_t j = 0; j < rd.size(); ++j) {
            if (remaining[j] <= 0) continue;
            if (std::abs(r.location - rd[j].location) <=
                std::max(tol.root_match * (1.0 + std::abs(r.location)), 1e-5 * tol.root_cluster_rel)) {
                const int used = std::min(mult, remaining[j]);
                remaining[j] -= used;
                mult -= used;
            }
            if (mult == 0) break;
        }
        if (mult > 0) diff.push_back({r.location, mult});
    }
    return Polynomial::from_roots(diff, 1.0);
}

} // namespace

SmithMcMillanForm smith_mcmillan(const TransferMatrix& P, const Tolerances& tol) {
    if (P.rows() == 0 || P.cols() == 0 || P.is_zero()) throw ZeroMatrixError();
    const int r = P.rows(), c = P.cols();
    const int rc_min = std::min(r, c);

    // P = N(s) / d(s) with d the monic LCM of the entry denominators.
    const auto [N, d] = P.common_denominator(tol);

    // Determinantal divisors D_i = monic GCD of all i x i minors.
    std::vector<Polynomial> D(static_cast<size_t>(rc_min) + 1);
    D[0] = Polynomial::one();
    int rank = 0;
    for (int k = 1; k <= rc_min; ++k) {
        std::vector<Polynomial> minors;
        double scale = 0.0;
        std::vector<int> ridx(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) ridx[static_cast<size_t>(i)] = i;
        while (true) {
            std::vector<int> cidx(static_cast<size_t>(k));
            for (int i = 0; i < k; ++i) cidx[static_cast<size_t>(i)] = i;
            while (true) {
                Polynomial m = poly_det(N, ridx, cidx);
                scale = std::max(scale, m.max_abs_coefficient());
                minors.push_back(std::move(m));
                int pos = k - 1;
                while (pos >= 0 && cidx[static_cast<size_t>(pos)] == c - k + pos) --pos;
                if (pos < 0) break;
                ++cidx[static_cast<size_t>(pos)];
                for (int q = pos + 1; q < k; ++q)
                    cidx[static_cast<size_t>(q)] = cidx[static_cast<size_t>(q - 1)] + 1;
            }
            int pos = k - 1;
            while (pos >= 0 && ridx[static_cast<size_t>(pos)] == r - k + pos) --pos;
            if (pos < 0) break;
            ++ridx[static_cast<size_t>(pos)];
            for (int q = pos + 1; q < k; ++q)
                ridx[static_cast<size_t>(q)] = ridx[static_cast<size_t>(q - 1)] + 1;
        }
        Polynomial g;
        bool any = false;
        for (const auto& m : minors) {
            if (negligible(m, scale)) continue;
            g = any ? poly_gcd(g, m, tol) : m.monic();
            any = true;
            if (g.degree() == 0) break;  // GCD can only shrink
        }
        if (!any) break;  // rank = k - 1
        D[static_cast<size_t>(k)] = g;
        rank = k;
    }

    SmithMcMillanForm out;
    out.rank = rank;
    for (int i = 1; i <= rank; ++i) {
        const Polynomial a = divide_by_roots(D[static_cast<size_t>(i)], D[static_cast<size_t>(i - 1)], tol);
        const RationalFunction f(a, d, tol);
        SmithMcMillanForm::Factor fac;
        fac.epsilon = f.num().is_zero() ? Polynomial::zero() : f.num().monic();
        fac.psi = f.den().monic();
        out.factors.push_back(std::move(fac));
    }
    return out;
}

PoleZeroReport unstable_pole_count(const TransferMatrix& P, const Tolerances& tol) {
    const SmithMcMillanForm sm = smith_mcmillan(P, tol);
    PoleZeroReport rep;
    auto merge = [&](RootSet& dst, const RootSet& src) {
        for (const auto& r : src) {
            bool matched = false;
            for (auto& u : dst) {
                if (std::abs(u.location - r.location) <=
                    std::max(tol.root_match, tol.root_cluster_rel) * (1.0 + std::abs(u.location))) {
                    u.multiplicity += r.multiplicity;
                    matched = true;
                    break;
                }
            }
            if (!matched) dst.push_back(r);
        }
    };
    for (const auto& f : sm.factors) {
        if (f.psi.degree() >= 1) merge(rep.poles, f.psi.roots(tol));
        if (!f.epsilon.is_zero() && f.epsilon.degree() >= 1) merge(rep.zeros, f.epsilon.roots(tol));
    }
    for (const auto& p : rep.poles) {
        if (p.location.real() > tol.marginal_band)
            rep.unstable_pole_count += p.multiplicity;
        else if (p.location.real() >= -tol.marginal_band)
            rep.marginal_pole_count += p.multiplicity;
    }
    return rep;
}

Theorem1Result theorem1_check(const TransferMatrix& P, const Tolerances& tol) {
    if (!P.is_square()) throw NotSquareError();
    Theorem1Result res;
    const PoleZeroReport rep = unstable_pole_count(P, tol);
    res.plant_unstable_count = rep.unstable_pole_count;

    const RationalFunction D = (TransferMatrix::identity(P.rows()) + P).det();
    if (D.is_zero()) throw SingularLoopError();

    RootSet det_zeros_rhp;
    bool det_zero_marginal = false;
    if (D.num().degree() >= 1) {
        for (const auto& z : D.num().roots(tol)) {
            if (z.location.real() > tol.marginal_band)
                det_zeros_rhp.push_back(z);
            else if (z.location.real() >= -tol.marginal_band)
                det_zero_marginal = true;
        }
    }
    int det_unstable_poles = 0;
    if (D.den().degree() >= 1) {
        for (const auto& p : D.den().roots(tol))
            if (p.location.real() > tol.marginal_band) det_unstable_poles += p.multiplicity;
    }
    res.det_unstable_pole_count = det_unstable_poles;
    res.hidden_mode = (det_unstable_poles != rep.unstable_pole_count);

    Verdict v;
    v.method = "theorem1";
    if (!det_zeros_rhp.empty() || res.hidden_mode) {
        v.status = StabilityStatus::Unstable;
        v.witness_poles = det_zeros_rhp;
        if (res.hidden_mode) {
            // The hidden unstable plant poles survive as closed-loop poles.
            for (const auto& p : rep.poles)
                if (p.location.real() > tol.marginal_band) v.witness_poles.push_back(p);
        }
    } else if (det_zero_marginal || rep.marginal_pole_count > 0) {
        v.status = StabilityStatus::Marginal;
    } else {
        v.status = StabilityStatus::Stable;
    }
    res.verdict = std::move(v);
    return res;
}

} // namespace mimostab
