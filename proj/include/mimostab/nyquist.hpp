#pragma once

#include <string>
#include <vector>

#include "mimostab/smith_mcmillan.hpp"
#include "mimostab/transfer_matrix.hpp"

namespace mimostab {

/// One contour point. Away from imaginary-axis plant poles s = j omega; on
/// an indentation arc s = j arc_center + r e^{j arc_phi} (right half plane).
struct GridPoint {
    double omega = 0.0;  ///< contour parameter (Im s on the axis)
    Complex s;
    int arc_index = -1;  ///< -1 off-arc, else index into FrequencyGrid::arc_centers
    double arc_phi = 0.0;
};

/// Symmetric frequency contour: omega ascending from -omega_max to omega_max,
/// indented into the right half plane around imaginary-axis plant poles.
struct FrequencyGrid {
    std::vector<GridPoint> points;
    std::vector<double> arc_centers;
    double indent_radius = 1e-4;
};

struct GridOptions {
    double omega_max = 0.0;      ///< 0: choose from the plant's pole/zero scale
    int base_points = 400;       ///< one-sided log-grid size before refinement
    double refine_threshold = 0.15;  ///< max step relative to critical-point distance
    int max_points = 40000;
    double indent_radius = 1e-4;
};

/// Log-spaced symmetric grid, indented at imaginary-axis plant poles and
/// adaptively refined wherever the determinant curve or an eigenvalue locus
/// moves too fast relative to its distance from the critical point.
FrequencyGrid build_grid(const TransferMatrix& P, const GridOptions& opt = {},
                         const Tolerances& tol = Tolerances::standard());

/// One continuously ordered eigenvalue trajectory over the grid.
struct LocusBranch {
    std::vector<Complex> values;
    Complex limit;  ///< eigenvalue of P(inf) this branch starts from (omega = -inf)
};

struct LocusSet {
    std::vector<LocusBranch> branches;
    /// Branch i's end (omega -> +inf) lands on the starting limit of branch
    /// permutation_at_infinity[i].
    std::vector<int> permutation_at_infinity;
    std::vector<double> omegas;  ///< shared contour parameters

    bool branch_closed(int i, const Tolerances& tol = Tolerances::standard()) const;
};

/// Eigenvalue loci over the grid. Eigenvalues are solved from the exact
/// rational characteristic polynomial at each point and ordered by
/// minimum-total-distance matching between adjacent frequencies (magnitude
/// sorting would tear the curves).
LocusSet eigen_loci(const TransferMatrix& P, const FrequencyGrid& grid,
                    const Tolerances& tol = Tolerances::standard());

/// Closed curve in the complex plane (first point == last point).
struct ClosedCurve {
    std::vector<Complex> points;
    std::vector<double> omegas;       ///< +-inf at limit junctions
    std::vector<int> point_branch;    ///< originating branch per point (-1: junction/det)
    std::vector<int> member_branches;
};

/// Pairwise combination of non-closed branches into closed curves by
/// following the endpoint permutation; closed branches become singletons.
/// The output curves partition the branches.
std::vector<ClosedCurve> merge_loci(const LocusSet& loci,
                                    const Tolerances& tol = Tolerances::standard());

/// Signed winding number of a closed curve about a point, CCW positive.
/// Throws PointOnCurveError when the curve passes within the exclusion
/// distance of the point.
int winding_number(const ClosedCurve& curve, Complex point,
                   const Tolerances& tol = Tolerances::standard());

struct DetNyquistResult {
    ClosedCurve curve;   ///< det(I + P(s)) along the contour, closed at the finite limit
    Verdict verdict;
    int winding = 0;     ///< CCW encirclements of 0
    int required = 0;    ///< open-loop unstable pole count (Smith-McMillan)
};

/// Determinant Nyquist test: stable iff the CCW encirclements of 0 equal the
/// open-loop unstable pole count and the curve stays clear of the origin.
DetNyquistResult det_nyquist(const TransferMatrix& P, const FrequencyGrid& grid,
                             const Tolerances& tol = Tolerances::standard());

struct GncResult {
    LocusSet loci;
    std::vector<ClosedCurve> curves;
    Verdict verdict;
    int total_winding = 0;  ///< CCW encirclements of -1 summed over curves
    int required = 0;
};

/// Generalized Nyquist criterion on the merged eigenvalue loci.
GncResult generalized_nyquist(const TransferMatrix& P, const GridOptions& opt = {},
                              const Tolerances& tol = Tolerances::standard());

struct CurveMargins {
    double k1 = 0.0;
    bool k1_zero_limit = true;  ///< no crossing left of -1: gain may drop to 0
    double k2 = std::numeric_limits<double>::infinity();
    double theta1 = 3.14159265358979323846;
};

/// Uniform gain/phase margins: per merged curve, gain limits from
/// negative-real-axis crossings and phase margin from unit-gain crossings;
/// combined by the max/min/min rule. Repeated (coincident) loci use the
/// root-sum-square gain of the group for crossover detection, a conservative
/// aggregate that reproduces the reference margins for repeated first-order
/// loci. Requires the nominal loop stable.
struct MarginReport {
    double k1 = 0.0;
    bool k1_zero_limit = true;
    double k2 = std::numeric_limits<double>::infinity();
    double theta1 = 0.0;
    std::vector<CurveMargins> per_curve;
};

MarginReport uniform_margins(const TransferMatrix& P, const GridOptions& opt = {},
                             const Tolerances& tol = Tolerances::standard());

struct SegmentCheck {
    bool crosses_segment = false;   ///< finite-frequency real-axis crossing left of -1
    bool limit_on_segment = false;  ///< limit at omega -> +-inf lands on (-inf, -1)
};

/// SISO caution checks on the Nyquist curve and the segment (-inf, -1).
SegmentCheck siso_segment_check(const TransferMatrix& P, const GridOptions& opt = {},
                                const Tolerances& tol = Tolerances::standard());

/// Exact stability check of the loop with U = k e^{j theta} I via the
/// identity det(I + cP) = sum_m c^m e_m(P) over the rational principal-minor
/// sums; closed-loop poles are the right-half-plane zeros of that function.
Verdict uniform_gain_phase_stability(const TransferMatrix& P, double k, double theta,
                                     const Tolerances& tol = Tolerances::standard());

/// CSV export: "omega,re,im,branch" rows (branch -1 for determinant curves).
void write_curve_csv(const std::string& path, const ClosedCurve& curve, int branch_id = -1);
void write_loci_csv(const std::string& path, const LocusSet& loci);

} // namespace mimostab
