#include "mimostab/robustness.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "mimostab/errors.hpp"

namespace mimostab {

namespace {

double sigma_max(const Eigen::MatrixXcd& m) {
    // Largest singular value via the Hermitian eigenvalues of M* M.
    const Eigen::MatrixXcd h = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw EigenSolveFailureError(0.0);
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double plant_scale(const TransferMatrix& G, const Tolerances& tol) {
    double scale = 1.0;
    for (int i = 0; i < G.rows(); ++i)
        for (int j = 0; j < G.cols(); ++j) {
            const auto& f = G.at(i, j);
            if (f.is_zero()) continue;
            if (f.den().degree() >= 1)
                for (const auto& r : f.den().roots(tol)) scale = std::max(scale, std::abs(r.location));
            if (f.num().degree() >= 1)
                for (const auto& r : f.num().roots(tol)) scale = std::max(scale, std::abs(r.location));
        }
    return scale;
}

} // namespace

double sigma_max_at(const TransferMatrix& G, double omega, const Tolerances& tol) {
    return sigma_max(G.eval(Complex(0.0, omega), tol));
}

HinfResult hinf_norm(const TransferMatrix& G, double rel_tol, const Tolerances& tol) {
    if (rel_tol <= 0.0 || rel_tol > 0.1) throw Error("hinf_norm: rel_tol must be in (0, 0.1]");
    if (!G.is_stable(tol)) throw UnstableOperandError();

    const double scale = plant_scale(G, tol);
    const double w_lo = 1e-6 * scale;
    const double w_hi = 1e6 * scale;
    const int n_grid = 400;

    std::vector<double> omegas{0.0};
    for (int k = 0; k < n_grid; ++k)
        omegas.push_back(w_lo * std::pow(w_hi / w_lo, static_cast<double>(k) / (n_grid - 1)));
    std::vector<double> vals;
    vals.reserve(omegas.size());
    for (double w : omegas) vals.push_back(sigma_max_at(G, w, tol));

    // the omega -> inf limit
    const double v_inf = sigma_max(G.limit_at_infinity().cast<Complex>());

    HinfResult res;
    res.converged = true;
    size_t best = 0;
    for (size_t k = 0; k < vals.size(); ++k)
        if (vals[k] > vals[best]) best = k;
    res.value = vals[best];
    res.peak_frequency = omegas[best];
    if (v_inf > res.value) {
        res.value = v_inf;
        res.peak_frequency = std::numeric_limits<double>::infinity();
    }

    // Golden-section refinement around the top interior candidates.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    std::vector<size_t> candidates;
    for (size_t k = 1; k + 1 < vals.size(); ++k)
        if (vals[k] >= vals[k - 1] && vals[k] >= vals[k + 1]) candidates.push_back(k);
    std::sort(candidates.begin(), candidates.end(),
              [&](size_t a, size_t b) { return vals[a] > vals[b]; });
    if (candidates.size() > 5) candidates.resize(5);
    for (size_t c : candidates) {
        double a = omegas[c - 1], b = omegas[c + 1];
        // work in log frequency; guard the omega = 0 anchor
        a = std::max(a, 1e-12 * scale);
        double la = std::log(a), lb = std::log(b);
        double x1 = lb - gr * (lb - la), x2 = la + gr * (lb - la);
        double f1 = sigma_max_at(G, std::exp(x1), tol);
        double f2 = sigma_max_at(G, std::exp(x2), tol);
        int guard = 0;
        while ((lb - la) > rel_tol && guard++ < 400) {
            if (f1 < f2) {
                la = x1;
                x1 = x2;
                f1 = f2;
                x2 = la + gr * (lb - la);
                f2 = sigma_max_at(G, std::exp(x2), tol);
            } else {
                lb = x2;
                x2 = x1;
                f2 = f1;
                x1 = lb - gr * (lb - la);
                f1 = sigma_max_at(G, std::exp(x1), tol);
            }
            const double fbest = std::max(f1, f2);
            if (fbest > res.value) {
                res.value = fbest;
                res.peak_frequency = std::exp(f1 > f2 ? x1 : x2);
            }
        }
        if (guard >= 400) res.converged = false;
    }
    return res;
}

SmallGainResult small_gain_check(const TransferMatrix& G1, const TransferMatrix& G2,
                                 double rel_tol, const Tolerances& tol) {
    SmallGainResult res;
    if (G1.cols() != G2.rows() || G2.cols() != G1.rows())
        throw Error("small_gain_check: incompatible dimensions");
    if (!G1.is_stable(tol) || !G2.is_stable(tol)) {
        res.applies = false;
        res.product_norm = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    const HinfResult norm = hinf_norm(G1 * G2, rel_tol, tol);
    res.product_norm = norm.value;
    res.applies = norm.value < 1.0;
    if (res.applies) {
        Verdict v;
        v.status = StabilityStatus::Stable;
        v.method = "small-gain";
        res.verdict_if_applies = v;
    }
    return res;
}

UncertaintyModel uncertainty_bound(const TransferMatrix& P, UncertaintyKind kind, double rel_tol,
                                   const Tolerances& tol) {
    // The guarantee needs the full premise: a stable plant whose nominal
    // loop is stable. A stable closed loop around an unstable plant is not
    // enough; the open-loop pole reappears under admissible perturbations.
    if (!P.is_stable(tol)) throw NominalUnstableError();
    const ClosedLoop cl = closed_loop(P, nullptr, tol);
    if (!cl.sensitivity.is_stable(tol)) throw NominalUnstableError();
    UncertaintyModel model;
    model.kind = kind;
    const TransferMatrix& g =
        (kind == UncertaintyKind::Additive) ? cl.sensitivity : cl.complementary;
    model.bound = 1.0 / hinf_norm(g, rel_tol, tol).value;
    return model;
}

Verdict perturbed_verdict(const TransferMatrix& P, const TransferMatrix& U,
                          const Tolerances& tol) {
    Verdict v = direct_stability(P, &U, tol);
    v.method = "perturbed-loop";
    return v;
}

} // namespace mimostab
