#pragma once

#include <optional>
#include <string>

#include "mimostab/transfer_matrix.hpp"

namespace mimostab {

/// Positive-real tiers, ascending. The implication chain
/// StronglyPR => StrictlyPR => StrongQuotedPR => PR is enforced structurally:
/// a tier is assigned only when every weaker tier's check also passes.
enum class PrTier { NotPR = 0, PR = 1, StrongQuotedPR = 2, StrictlyPR = 3, StronglyPR = 4 };

std::string to_string(PrTier tier);

struct PrWitnesses {
    std::optional<double> failing_frequency;   ///< Hermitian-part minimum violation
    std::optional<Complex> failing_pole;       ///< right-half-plane pole
    std::optional<double> epsilon;             ///< certified shift for StrictlyPR
    std::optional<double> delta;               ///< certified uniform margin for StronglyPR
    double min_hermitian_eig = 0.0;            ///< refined minimum over the sweep
};

struct PassivityClass {
    PrTier tier = PrTier::NotPR;
    PrWitnesses witnesses;
};

/// Smallest eigenvalue of the Hermitian part G(jw) + G(jw)^*.
double hermitian_min_eig(const TransferMatrix& G, double omega,
                         const Tolerances& tol = Tolerances::standard());

/// Positive-real classification of a square rational transfer matrix:
/// pole conditions, Hermitian-part sweep with refinement at near-zero
/// minima, residue test at simple imaginary-axis poles, bisection search
/// for the StrictlyPR shift and an explicit uniform delta for StronglyPR.
/// Minimality is assumed from the reduced entries. Repeated imaginary-axis
/// poles raise RepeatedAxisPoleError (reported, not guessed).
PassivityClass classify_pr(const TransferMatrix& G,
                           const Tolerances& tol = Tolerances::standard());

struct InterconnectResult {
    bool theorem_applies = false;
    PrTier tier1 = PrTier::NotPR;
    PrTier tier2 = PrTier::NotPR;
    Verdict verdict;  ///< certified Stable, or the direct fallback when inconclusive
};

/// Feedback interconnection of two LTI systems: certified stable when one
/// operand is positive real and the other at least "strong" positive real.
/// PR + PR alone is not sufficient; inconclusive cases fall back to the
/// direct check (so the misconception is visible, not hidden).
InterconnectResult passivity_interconnect(const TransferMatrix& G1, const TransferMatrix& G2,
                                          const Tolerances& tol = Tolerances::standard());

struct MixedReport {
    double c = 0.0;           ///< crossover frequency (rad/s)
    bool pr_band_ok = false;  ///< Hermitian part positive definite for |w| <= c
    bool gain_band_ok = false;  ///< sup_{|w| > c} ||G(jw)|| < 1
};

/// Mixed small-gain/positive-real band test at crossover c (stable G only).
MixedReport mixed_check(const TransferMatrix& G, double c,
                        const Tolerances& tol = Tolerances::standard());

struct MixedInterconnectResult {
    bool theorem_applies = false;
    std::optional<double> common_c;
    Verdict verdict;
};

/// Searches a crossover grid for a common c at which both operands satisfy
/// the mixed property; the interconnection is then certified stable.
MixedInterconnectResult mixed_interconnect(const TransferMatrix& G1, const TransferMatrix& G2,
                                           const Tolerances& tol = Tolerances::standard());

} // namespace mimostab
