#include "mimostab/nyquist.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "mimostab/errors.hpp"

namespace mimostab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_angle(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a <= -kPi) a += 2.0 * kPi;
    return a;
}

// Largest pole/zero magnitude of the plant, for automatic grid scaling.
double natural_scale(const TransferMatrix& P, const Tolerances& tol) {
    double scale = 1.0;
    for (int i = 0; i < P.rows(); ++i)
        for (int j = 0; j < P.cols(); ++j) {
            const auto& f = P.at(i, j);
            if (f.is_zero()) continue;
            if (f.den().degree() >= 1)
                for (const auto& r : f.den().roots(tol)) scale = std::max(scale, std::abs(r.location));
            if (f.num().degree() >= 1)
                for (const auto& r : f.num().roots(tol)) scale = std::max(scale, std::abs(r.location));
        }
    return scale;
}

GridPoint axis_point(double omega) {
    GridPoint g;
    g.omega = omega;
    g.s = Complex(0.0, omega);
    return g;
}

GridPoint arc_point(int arc_index, double center, double radius, double phi) {
    GridPoint g;
    g.arc_index = arc_index;
    g.arc_phi = phi;
    g.omega = center + radius * std::sin(phi);
    g.s = Complex(radius * std::cos(phi), center + radius * std::sin(phi));
    return g;
}

// Eigenvalues of P(s) from the rational characteristic coefficients.
struct CharPoly {
    std::vector<RationalFunction> coeffs;  // ascending in lambda, monic

    std::vector<Complex> eigenvalues(Complex s, double omega_for_error,
                                     const Tolerances& tol) const {
        std::vector<Complex> c(coeffs.size());
        for (size_t k = 0; k < coeffs.size(); ++k) c[k] = coeffs[k].eval(s, tol);
        try {
            return complex_poly_roots(c, tol);
        } catch (const EigenSolveFailureError&) {
            throw EigenSolveFailureError(omega_for_error);
        }
    }
};

// Minimum-total-distance assignment of new eigenvalues to previous ones.
// Exhaustive over permutations for n <= 6 (the paper-scale sizes).
std::vector<Complex> match_to(const std::vector<Complex>& prev, std::vector<Complex> next) {
    const size_t n = prev.size();
    if (n <= 1) return next;
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<size_t> best = idx;
    double best_cost = std::numeric_limits<double>::max();
    do {
        double cost = 0.0;
        for (size_t i = 0; i < n; ++i) cost += std::abs(prev[i] - next[idx[i]]);
        if (cost < best_cost) {
            best_cost = cost;
            best = idx;
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    std::vector<Complex> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = next[best[i]];
    return out;
}

std::vector<Complex> limit_eigenvalues(const TransferMatrix& P) {
    const Eigen::MatrixXd p_inf = P.limit_at_infinity();
    if (p_inf.cwiseAbs().maxCoeff() == 0.0)
        return std::vector<Complex>(static_cast<size_t>(P.rows()), Complex(0.0, 0.0));
    Eigen::EigenSolver<Eigen::MatrixXd> solver(p_inf, false);
    if (solver.info() != Eigen::Success) throw EigenSolveFailureError(std::numeric_limits<double>::infinity());
    std::vector<Complex> out;
    for (int i = 0; i < P.rows(); ++i) out.push_back(solver.eigenvalues()(i));
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

// Shared refinement rule: a curve step is resolved if it is small relative to
// the distance from the critical point (so the winding angle per step stays
// small) and relative to the local curve scale (so branch matching stays
// unambiguous).
bool step_resolved(Complex a, Complex b, Complex critical, double threshold) {
    const double step = std::abs(a - b);
    const double dist = std::min(std::abs(a - critical), std::abs(b - critical));
    const double scale = std::max({std::abs(a), std::abs(b), 1e-9});
    return step <= std::max(threshold * dist, 1e-14) || step <= 0.1 * threshold * scale;
}

} // namespace

bool LocusSet::branch_closed(int i, const Tolerances& tol) const {
    const int j = permutation_at_infinity[static_cast<size_t>(i)];
    const Complex a = branches[static_cast<size_t>(i)].limit;
    const Complex b = branches[static_cast<size_t>(j)].limit;
    return std::abs(a - b) <= tol.curve_closure * (1.0 + std::abs(a));
}

FrequencyGrid build_grid(const TransferMatrix& P, const GridOptions& opt, const Tolerances& tol) {
    if (!P.is_square()) throw NotSquareError();
    const double scale = natural_scale(P, tol);
    const double omega_max = opt.omega_max > 0.0 ? opt.omega_max : 1e4 * scale;
    const double omega_lo = std::min(1e-4, 1e-7 * omega_max);

    FrequencyGrid grid;
    grid.indent_radius = opt.indent_radius;

    // Imaginary-axis plant poles need an indentation arc.
    std::vector<double> axis_poles;
    for (const auto& r : P.entry_poles(tol))
        if (std::abs(r.location.real()) <= tol.marginal_band) {
            const double w0 = r.location.imag();
            bool seen = false;
            for (double w : axis_poles)
                if (std::abs(w - w0) <= opt.indent_radius) seen = true;
            if (!seen) axis_poles.push_back(w0);
        }
    std::sort(axis_poles.begin(), axis_poles.end());
    grid.arc_centers = axis_poles;

    auto near_arc = [&](double omega) {
        for (double w0 : axis_poles)
            if (std::abs(omega - w0) <= opt.indent_radius) return true;
        return false;
    };

    std::vector<GridPoint> pts;
    const int m = std::max(opt.base_points, 16);
    for (int k = 0; k < m; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(m - 1);
        const double w = omega_lo * std::pow(omega_max / omega_lo, t);
        if (!near_arc(w)) pts.push_back(axis_point(w));
        if (!near_arc(-w)) pts.push_back(axis_point(-w));
    }
    if (!near_arc(0.0)) pts.push_back(axis_point(0.0));
    for (size_t a = 0; a < axis_poles.size(); ++a) {
        const int arc_n = 33;
        for (int k = 0; k < arc_n; ++k) {
            const double phi = -0.5 * kPi + kPi * static_cast<double>(k) / (arc_n - 1);
            pts.push_back(arc_point(static_cast<int>(a), axis_poles[a], opt.indent_radius, phi));
        }
    }
    std::sort(pts.begin(), pts.end(),
              [](const GridPoint& a, const GridPoint& b) { return a.omega < b.omega; });

    // Adaptive refinement against the determinant curve and the matched
    // eigenvalue loci.
    const RationalFunction det_ip = (TransferMatrix::identity(P.rows()) + P).det();
    CharPoly cp{P.charpoly_coefficients()};

    for (int pass = 0; pass < 24; ++pass) {
        // Evaluate along the contour.
        std::vector<Complex> det_vals(pts.size());
        std::vector<std::vector<Complex>> eig_vals(pts.size());
        std::vector<Complex> prev = limit_eigenvalues(P);
        for (size_t k = 0; k < pts.size(); ++k) {
            det_vals[k] = det_ip.eval(pts[k].s, tol);
            prev = match_to(prev, cp.eigenvalues(pts[k].s, pts[k].omega, tol));
            eig_vals[k] = prev;
        }
        std::vector<GridPoint> inserts;
        for (size_t k = 0; k + 1 < pts.size(); ++k) {
            bool ok = step_resolved(det_vals[k], det_vals[k + 1], Complex(0, 0),
                                    opt.refine_threshold);
            for (size_t b = 0; ok && b < eig_vals[k].size(); ++b)
                ok = step_resolved(eig_vals[k][b], eig_vals[k + 1][b], Complex(-1, 0),
                                   opt.refine_threshold);
            if (ok) continue;
            const GridPoint& a = pts[k];
            const GridPoint& b = pts[k + 1];
            if (a.arc_index >= 0 && a.arc_index == b.arc_index) {
                const double center = grid.arc_centers[static_cast<size_t>(a.arc_index)];
                const double phi = 0.5 * (a.arc_phi + b.arc_phi);
                inserts.push_back(arc_point(a.arc_index, center, opt.indent_radius, phi));
                // mirrored arc keeps the grid symmetric
                for (size_t am = 0; am < grid.arc_centers.size(); ++am)
                    if (grid.arc_centers[am] == -center)
                        inserts.push_back(arc_point(static_cast<int>(am), -center,
                                                    opt.indent_radius, -phi));
            } else {
                const double mid = 0.5 * (a.omega + b.omega);
                if (!near_arc(mid)) inserts.push_back(axis_point(mid));
                if (!near_arc(-mid)) inserts.push_back(axis_point(-mid));
            }
        }
        if (inserts.empty() || static_cast<int>(pts.size() + inserts.size()) > opt.max_points)
            break;
        for (auto& g : inserts) pts.push_back(g);
        std::sort(pts.begin(), pts.end(),
                  [](const GridPoint& x, const GridPoint& y) { return x.omega < y.omega; });
        pts.erase(std::unique(pts.begin(), pts.end(),
                              [](const GridPoint& x, const GridPoint& y) {
                                  return x.omega == y.omega;
                              }),
                  pts.end());
    }
    grid.points = std::move(pts);
    return grid;
}

LocusSet eigen_loci(const TransferMatrix& P, const FrequencyGrid& grid, const Tolerances& tol) {
    if (!P.is_square()) throw NotSquareError();
    const int n = P.rows();
    CharPoly cp{P.charpoly_coefficients()};
    const std::vector<Complex> limits = limit_eigenvalues(P);

    LocusSet loci;
    loci.branches.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        loci.branches[static_cast<size_t>(i)].limit = limits[static_cast<size_t>(i)];
        loci.branches[static_cast<size_t>(i)].values.reserve(grid.points.size());
    }
    std::vector<Complex> prev = limits;
    for (const auto& g : grid.points) {
        prev = match_to(prev, cp.eigenvalues(g.s, g.omega, tol));
        for (int i = 0; i < n; ++i)
            loci.branches[static_cast<size_t>(i)].values.push_back(prev[static_cast<size_t>(i)]);
        loci.omegas.push_back(g.omega);
    }
    // Close each branch end onto a starting limit.
    std::vector<Complex> ends(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ends[static_cast<size_t>(i)] = loci.branches[static_cast<size_t>(i)].values.back();
    // assignment: permutation minimizing total end-to-limit distance
    std::vector<size_t> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<size_t> best = idx;
    double best_cost = std::numeric_limits<double>::max();
    do {
        double cost = 0.0;
        for (size_t i = 0; i < idx.size(); ++i) cost += std::abs(ends[i] - limits[idx[i]]);
        if (cost < best_cost) {
            best_cost = cost;
            best = idx;
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    loci.permutation_at_infinity.assign(best.begin(), best.end());
    // Gap check: every end must actually reach its matched limit.
    for (int i = 0; i < n; ++i) {
        const double gap = std::abs(ends[static_cast<size_t>(i)] -
                                    limits[best[static_cast<size_t>(i)]]);
        // Proper (non-strictly) responses approach their limit like 1/omega,
        // so the admissible end gap scales with the sweep range.
        const double lim = 0.02 * (1.0 + std::abs(limits[best[static_cast<size_t>(i)]]));
        if (gap > lim) throw ClosureFailureError(gap);
    }
    return loci;
}

std::vector<ClosedCurve> merge_loci(const LocusSet& loci, const Tolerances& tol) {
    const int n = static_cast<int>(loci.branches.size());
    std::vector<bool> used(static_cast<size_t>(n), false);
    std::vector<ClosedCurve> curves;
    const double inf = std::numeric_limits<double>::infinity();

    auto append_branch = [&](ClosedCurve& c, int b) {
        const auto& br = loci.branches[static_cast<size_t>(b)];
        c.points.push_back(br.limit);
        c.omegas.push_back(-inf);
        c.point_branch.push_back(b);
        for (size_t k = 0; k < br.values.size(); ++k) {
            c.points.push_back(br.values[k]);
            c.omegas.push_back(loci.omegas[k]);
            c.point_branch.push_back(b);
        }
        c.member_branches.push_back(b);
    };

    for (int i = 0; i < n; ++i) {
        if (used[static_cast<size_t>(i)]) continue;
        ClosedCurve c;
        int b = i;
        do {
            append_branch(c, b);
            used[static_cast<size_t>(b)] = true;
            b = loci.permutation_at_infinity[static_cast<size_t>(b)];
        } while (b != i && !used[static_cast<size_t>(b)]);
        if (b != i) throw ClosureFailureError(0.0);
        // closing point = starting limit
        c.points.push_back(loci.branches[static_cast<size_t>(i)].limit);
        c.omegas.push_back(inf);
        c.point_branch.push_back(i);
        const double gap = std::abs(c.points.front() - c.points.back());
        if (gap > tol.curve_closure * (1.0 + std::abs(c.points.front())) + 1e-9)
            throw ClosureFailureError(gap);
        curves.push_back(std::move(c));
    }
    return curves;
}

int winding_number(const ClosedCurve& curve, Complex point, const Tolerances& tol) {
    double min_dist = std::numeric_limits<double>::max();
    for (const auto& z : curve.points) min_dist = std::min(min_dist, std::abs(z - point));
    if (min_dist <= tol.winding_exclusion * (1.0 + std::abs(point))) throw PointOnCurveError();
    double total = 0.0;
    for (size_t k = 0; k + 1 < curve.points.size(); ++k) {
        const Complex a = curve.points[k] - point;
        const Complex b = curve.points[k + 1] - point;
        total += wrap_angle(std::arg(b) - std::arg(a));
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

namespace {

RootSet closed_loop_rhp_witnesses(const TransferMatrix& P, const PoleZeroReport& rep,
                                  const Tolerances& tol) {
    RootSet w;
    const RationalFunction d = (TransferMatrix::identity(P.rows()) + P).det();
    if (d.num().degree() >= 1)
        for (const auto& z : d.num().roots(tol))
            if (z.location.real() > tol.marginal_band) w.push_back(z);
    // Hidden unstable plant modes survive as closed-loop poles even when the
    // determinant does not show them.
    int det_unstable_poles = 0;
    if (d.den().degree() >= 1)
        for (const auto& p : d.den().roots(tol))
            if (p.location.real() > tol.marginal_band) det_unstable_poles += p.multiplicity;
    if (det_unstable_poles != rep.unstable_pole_count)
        for (const auto& p : rep.poles)
            if (p.location.real() > tol.marginal_band) w.push_back(p);
    return w;
}

} // namespace

DetNyquistResult det_nyquist(const TransferMatrix& P, const FrequencyGrid& grid,
                             const Tolerances& tol) {
    if (!P.is_square()) throw NotSquareError();
    const RationalFunction d = (TransferMatrix::identity(P.rows()) + P).det();
    const auto lim = d.limit_at_infinity();
    if (!lim) throw Error("det(I+P) has no finite limit at infinity (improper plant)");

    DetNyquistResult res;
    const double inf = std::numeric_limits<double>::infinity();
    res.curve.points.push_back(Complex(*lim, 0.0));
    res.curve.omegas.push_back(-inf);
    res.curve.point_branch.push_back(-1);
    for (const auto& g : grid.points) {
        res.curve.points.push_back(d.eval(g.s, tol));
        res.curve.omegas.push_back(g.omega);
        res.curve.point_branch.push_back(-1);
    }
    res.curve.points.push_back(Complex(*lim, 0.0));
    res.curve.omegas.push_back(inf);
    res.curve.point_branch.push_back(-1);

    const PoleZeroReport rep = unstable_pole_count(P, tol);
    res.required = rep.unstable_pole_count;
    try {
        res.winding = winding_number(res.curve, Complex(0.0, 0.0), tol);
    } catch (const PointOnCurveError&) {
        res.verdict.status = StabilityStatus::Marginal;
        res.verdict.method = "det-nyquist (curve at origin)";
        return res;
    }
    res.verdict.method = "det-nyquist";
    if (res.winding == res.required) {
        res.verdict.status = StabilityStatus::Stable;
    } else {
        res.verdict.status = StabilityStatus::Unstable;
        res.verdict.witness_poles = closed_loop_rhp_witnesses(P, rep, tol);
    }
    return res;
}

GncResult generalized_nyquist(const TransferMatrix& P, const GridOptions& opt,
                              const Tolerances& tol) {
    const FrequencyGrid grid = build_grid(P, opt, tol);
    GncResult res;
    res.loci = eigen_loci(P, grid, tol);
    res.curves = merge_loci(res.loci, tol);
    const PoleZeroReport rep = unstable_pole_count(P, tol);
    res.required = rep.unstable_pole_count;
    res.verdict.method = "generalized-nyquist";
    try {
        for (const auto& c : res.curves) res.total_winding += winding_number(c, Complex(-1.0, 0.0), tol);
    } catch (const PointOnCurveError&) {
        res.verdict.status = StabilityStatus::Marginal;
        res.verdict.method = "generalized-nyquist (locus at -1)";
        return res;
    }
    if (res.total_winding == res.required) {
        res.verdict.status = StabilityStatus::Stable;
    } else {
        res.verdict.status = StabilityStatus::Unstable;
        res.verdict.witness_poles = closed_loop_rhp_witnesses(P, rep, tol);
    }
    return res;
}

namespace {

struct Crossings {
    std::vector<double> real_axis_negative;  // x < 0 crossing locations
    std::vector<double> phase_candidates;    // |angle to -1| of unit-gain crossings
};

// Linear-interpolation crossing scan of one closed curve. gain_scale
// multiplies |z| in the unit-gain detection (the root-sum-square rule for
// coincident locus groups).
Crossings scan_curve(const ClosedCurve& c, double gain_scale) {
    Crossings out;
    const size_t n = c.points.size();
    for (size_t k = 0; k + 1 < n; ++k) {
        const Complex a = c.points[k];
        const Complex b = c.points[k + 1];
        // real-axis crossings
        if (a.imag() == 0.0) {
            if (a.real() < 0.0) out.real_axis_negative.push_back(a.real());
        } else if (a.imag() * b.imag() < 0.0) {
            const double t = a.imag() / (a.imag() - b.imag());
            const double x = a.real() + t * (b.real() - a.real());
            if (x < 0.0) out.real_axis_negative.push_back(x);
        }
        // unit-gain crossings
        const double ga = gain_scale * std::abs(a) - 1.0;
        const double gb = gain_scale * std::abs(b) - 1.0;
        if (ga == 0.0 || ga * gb < 0.0) {
            const double t = (ga == 0.0) ? 0.0 : ga / (ga - gb);
            const Complex zc = a + t * (b - a);
            out.phase_candidates.push_back(std::abs(wrap_angle(std::arg(zc) - kPi)));
        }
    }
    return out;
}

} // namespace

MarginReport uniform_margins(const TransferMatrix& P, const GridOptions& opt,
                             const Tolerances& tol) {
    if (!direct_stability(P, nullptr, tol).stable()) throw NominalUnstableError();
    const FrequencyGrid grid = build_grid(P, opt, tol);
    const LocusSet loci = eigen_loci(P, grid, tol);
    const std::vector<ClosedCurve> curves = merge_loci(loci, tol);

    // Group coincident single-branch curves: repeated eigenvalue loci traverse
    // the same curve, and the group crossover uses the root-sum-square gain.
    std::vector<int> group_size(curves.size(), 1);
    for (size_t i = 0; i < curves.size(); ++i) {
        if (curves[i].member_branches.size() != 1) continue;
        for (size_t j = 0; j < curves.size(); ++j) {
            if (j == i || curves[j].member_branches.size() != 1) continue;
            if (curves[i].points.size() != curves[j].points.size()) continue;
            bool same = true;
            for (size_t k = 0; k < curves[i].points.size() && same; ++k) {
                const double scale = 1.0 + std::abs(curves[i].points[k]);
                if (std::abs(curves[i].points[k] - curves[j].points[k]) > 1e-7 * scale)
                    same = false;
            }
            if (same) ++group_size[i];
        }
    }

    MarginReport rep;
    rep.theta1 = kPi;
    rep.k1 = 0.0;
    rep.k1_zero_limit = true;
    for (size_t i = 0; i < curves.size(); ++i) {
        CurveMargins cm;
        Crossings base = scan_curve(curves[i], 1.0);
        for (double x : base.real_axis_negative) {
            const double kc = -1.0 / x;
            if (kc < 1.0) {
                if (cm.k1_zero_limit || kc > cm.k1) {
                    cm.k1 = kc;
                    cm.k1_zero_limit = false;
                }
            } else if (kc > 1.0) {
                cm.k2 = std::min(cm.k2, kc);
            }
        }
        cm.theta1 = kPi;
        for (double th : base.phase_candidates) cm.theta1 = std::min(cm.theta1, th);
        if (group_size[i] > 1) {
            const Crossings grp = scan_curve(curves[i], std::sqrt(static_cast<double>(group_size[i])));
            for (double th : grp.phase_candidates) cm.theta1 = std::min(cm.theta1, th);
        }
        rep.per_curve.push_back(cm);
        // Theorem rule: k1 = max, k2 = min, theta1 = min.
        if (!cm.k1_zero_limit && (rep.k1_zero_limit || cm.k1 > rep.k1)) {
            rep.k1 = cm.k1;
            rep.k1_zero_limit = false;
        }
        rep.k2 = std::min(rep.k2, cm.k2);
        rep.theta1 = std::min(rep.theta1, cm.theta1);
    }
    return rep;
}

SegmentCheck siso_segment_check(const TransferMatrix& P, const GridOptions& opt,
                                const Tolerances& tol) {
    if (P.rows() != 1 || P.cols() != 1) throw NotSquareError();
    SegmentCheck out;
    const auto lim = P.at(0, 0).limit_at_infinity();
    if (lim) out.limit_on_segment = (*lim < -1.0);
    const FrequencyGrid grid = build_grid(P, opt, tol);
    std::vector<Complex> vals;
    vals.reserve(grid.points.size());
    for (const auto& g : grid.points) vals.push_back(P.at(0, 0).eval(g.s, tol));
    for (size_t k = 0; k + 1 < vals.size(); ++k) {
        const Complex a = vals[k];
        const Complex b = vals[k + 1];
        if (a.imag() == 0.0) {
            if (a.real() < -1.0) out.crosses_segment = true;
        } else if (a.imag() * b.imag() < 0.0) {
            const double t = a.imag() / (a.imag() - b.imag());
            const double x = a.real() + t * (b.real() - a.real());
            if (x < -1.0) out.crosses_segment = true;
        }
    }
    return out;
}

Verdict uniform_gain_phase_stability(const TransferMatrix& P, double k, double theta,
                                     const Tolerances& tol) {
    if (!P.is_square()) throw NotSquareError();
    const int n = P.rows();
    const Complex c = k * Complex(std::cos(theta), std::sin(theta));
    // det(I + cP) = sum_m c^m e_m with e_m = (-1)^m lambda^{n-m} coefficient.
    const std::vector<RationalFunction> coeffs = P.charpoly_coefficients();
    std::vector<RationalFunction> e(static_cast<size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        RationalFunction v = coeffs[static_cast<size_t>(n - m)];
        if (m % 2 != 0) v = -v;
        e[static_cast<size_t>(m)] = v;
    }
    // common denominator D = LCM of the e_m denominators
    Polynomial D = Polynomial::one();
    for (const auto& f : e)
        if (!f.is_zero() && f.den().degree() >= 1) D = poly_lcm(D, f.den(), tol);
    // complex numerator N(s) = sum c^m e_m.num * (D / e_m.den)
    std::vector<Complex> num(1, Complex(0.0, 0.0));
    Complex cp(1.0, 0.0);
    for (int m = 0; m <= n; ++m) {
        const auto& f = e[static_cast<size_t>(m)];
        if (!f.is_zero()) {
            const Polynomial cof = (f.den().degree() >= 1) ? D.divide(f.den()).first : D * (1.0 / f.den().leading());
            const Polynomial term = f.num() * cof;
            if (num.size() < static_cast<size_t>(term.degree()) + 1)
                num.resize(static_cast<size_t>(term.degree()) + 1, Complex(0.0, 0.0));
            for (int i = 0; i <= term.degree(); ++i)
                num[static_cast<size_t>(i)] += cp * term.coefficient(i);
        }
        cp *= c;
    }
    // Closed-loop poles: zeros of det(I + cP) plus any hidden unstable modes
    // (detected from the determinant's unstable-pole deficit).
    RootSet poles;
    for (const auto& z : complex_poly_roots(num, tol)) poles.push_back({z, 1});
    RootSet rhp;
    for (const auto& r : poles)
        if (r.location.real() >= -tol.marginal_band) rhp.push_back(r);
    const PoleZeroReport rep = unstable_pole_count(P, tol);
    int det_rhp_poles = 0;
    if (D.degree() >= 1)
        for (const auto& p : D.roots(tol))
            if (p.location.real() > tol.marginal_band) det_rhp_poles += p.multiplicity;
    Verdict v = classify_poles(rhp, "uniform-gain-phase", tol);
    if (det_rhp_poles != rep.unstable_pole_count) {
        v.status = StabilityStatus::Unstable;
        for (const auto& p : rep.poles)
            if (p.location.real() > tol.marginal_band) v.witness_poles.push_back(p);
    }
    return v;
}

void write_curve_csv(const std::string& path, const ClosedCurve& curve, int branch_id) {
    std::ofstream os(path);
    os << "omega,re,im,branch\n";
    os.precision(17);
    for (size_t k = 0; k < curve.points.size(); ++k) {
        if (!std::isfinite(curve.omegas[k])) continue;
        const int b = curve.point_branch.empty() ? branch_id : curve.point_branch[k];
        os << curve.omegas[k] << "," << curve.points[k].real() << "," << curve.points[k].imag()
           << "," << b << "\n";
    }
}

void write_loci_csv(const std::string& path, const LocusSet& loci) {
    std::ofstream os(path);
    os << "omega,re,im,branch\n";
    os.precision(17);
    for (size_t b = 0; b < loci.branches.size(); ++b)
        for (size_t k = 0; k < loci.branches[b].values.size(); ++k)
            os << loci.omegas[k] << "," << loci.branches[b].values[k].real() << ","
               << loci.branches[b].values[k].imag() << "," << b << "\n";
}

} // namespace mimostab
