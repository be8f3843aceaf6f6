#pragma once

#include <optional>

#include "mimostab/transfer_matrix.hpp"

namespace mimostab {

struct HinfResult {
    double value = 0.0;
    double peak_frequency = 0.0;  ///< +inf when the supremum sits at omega -> inf
    bool converged = false;
};

/// H-infinity norm: sup over omega of the largest singular value, located by
/// a coarse log-frequency sweep and golden-section refinement of the top
/// candidates. Defined for stable operands only (UnstableOperandError
/// otherwise). The largest singular value at a frequency comes from the
/// Hermitian eigenvalues of G(jw)* G(jw).
HinfResult hinf_norm(const TransferMatrix& G, double rel_tol = 1e-6,
                     const Tolerances& tol = Tolerances::standard());

struct SmallGainResult {
    bool applies = false;       ///< both operands stable and ||G1 G2||_inf < 1
    double product_norm = 0.0;  ///< NaN when an operand is unstable
    std::optional<Verdict> verdict_if_applies;
};

/// Small-gain certificate for the feedback pair (G1, G2). When it does not
/// apply the test is inconclusive by design (it is conservative for one
/// specific pair); callers may fall back to direct_stability.
SmallGainResult small_gain_check(const TransferMatrix& G1, const TransferMatrix& G2,
                                 double rel_tol = 1e-6,
                                 const Tolerances& tol = Tolerances::standard());

enum class UncertaintyKind { Additive, Multiplicative };

struct UncertaintyModel {
    UncertaintyKind kind = UncertaintyKind::Additive;
    double bound = 0.0;  ///< admissible ||Delta||_inf
};

/// Guaranteed-stability uncertainty bound about a nominally stable loop:
/// 1/||(I+P)^{-1}||_inf for additive blocks, 1/||P(I+P)^{-1}||_inf for
/// multiplicative ones.
UncertaintyModel uncertainty_bound(const TransferMatrix& P, UncertaintyKind kind,
                                   double rel_tol = 1e-6,
                                   const Tolerances& tol = Tolerances::standard());

/// Stability of the loop with the block U inserted in series with the plant
/// (the Delta = U - I viewpoint of the multiplicative model).
Verdict perturbed_verdict(const TransferMatrix& P, const TransferMatrix& U,
                          const Tolerances& tol = Tolerances::standard());

/// Largest singular value of G(jw); shared by the norm sweep and tests.
double sigma_max_at(const TransferMatrix& G, double omega,
                    const Tolerances& tol = Tolerances::standard());

} // namespace mimostab
