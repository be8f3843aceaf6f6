#pragma once

namespace mimostab {

/// Numeric tolerances used across the library. All analysis entry points
/// accept an explicit Tolerances value; standard() holds the defaults.
struct Tolerances {
    /// Absolute root-location matching distance for approximate GCD and
    /// cross-polynomial root identification (scaled by 1 + |root|).
    double root_match = 1e-9;

    /// Relative distance below which roots of one polynomial merge into a
    /// single root with summed multiplicity. A k-fold root solved through a
    /// companion matrix splits by roughly (machine eps)^(1/k), ~1e-5 for
    /// doubles at moderate degree, so the cluster radius must sit above that.
    double root_cluster_rel = 5e-5;

    /// Root-matching distance used when cancelling common factors inside
    /// rational-function reduction. Cluster centroids are much more accurate
    /// than the individual split roots, so this sits between root_match and
    /// root_cluster_rel.
    double reduce_match = 1e-7;

    /// |den(s)| below this value counts as evaluating at a pole.
    double pole_guard = 1e-12;

    /// Relative threshold for stripping trailing (highest-degree)
    /// coefficients after arithmetic.
    double coeff_trim_rel = 1e-12;

    /// Half-width of the band around the imaginary axis inside which a pole
    /// is reported Marginal instead of Stable/Unstable.
    double marginal_band = 1e-7;

    /// Minimum curve-to-point distance for a defined winding number.
    double winding_exclusion = 1e-6;

    /// Endpoint gap (relative to 1 + |value|) tolerated when closing
    /// eigenvalue loci into curves.
    double curve_closure = 1e-6;

    /// Coefficient-wise comparison tolerance for rational-function equality.
    double coeff_eq = 1e-8;

    /// Boundary tolerance on Hermitian-part minimum eigenvalues when
    /// deciding positive-real tiers.
    double pr_boundary = 1e-9;

    /// Default relative refinement tolerance for the H-infinity norm.
    double hinf_rel = 1e-6;

    /// Radius of the right-half-plane indentation arc around imaginary-axis
    /// poles of the plant.
    double indent_radius = 1e-4;

    static const Tolerances& standard();
};

inline const Tolerances& Tolerances::standard() {
    static const Tolerances t{};
    return t;
}

} // namespace mimostab
