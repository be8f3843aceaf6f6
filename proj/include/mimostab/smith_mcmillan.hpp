#pragma once

#include <vector>

#include "mimostab/transfer_matrix.hpp"

namespace mimostab {

/// Smith-McMillan invariant rational factors eps_i / psi_i, both monic,
/// with the divisibility chains eps_i | eps_{i+1} and psi_{i+1} | psi_i.
struct SmithMcMillanForm {
    struct Factor {
        Polynomial epsilon;
        Polynomial psi;
    };
    std::vector<Factor> factors;
    int rank = 0;
};

/// Pole/zero bookkeeping derived from the Smith-McMillan form. Marginal-band
/// poles of the plant are reported separately and never counted as unstable.
struct PoleZeroReport {
    RootSet poles;  ///< roots of prod(psi_i), multiplicity-correct
    RootSet zeros;  ///< roots of prod(eps_i)
    int unstable_pole_count = 0;
    int marginal_pole_count = 0;
};

struct Theorem1Result {
    Verdict verdict;
    /// True when the unstable-pole multiplicity visible in det(I+P) differs
    /// from the Smith-McMillan unstable-pole multiplicity of P.
    bool hidden_mode = false;
    int plant_unstable_count = 0;
    int det_unstable_pole_count = 0;
};

/// Smith-McMillan form via determinantal divisors: with P = N(s)/d(s) and
/// D_i the monic GCD of all i x i minors of N, the invariant factors are
/// a_i = D_i / D_{i-1} and eps_i/psi_i = reduced a_i/d.
SmithMcMillanForm smith_mcmillan(const TransferMatrix& P,
                                 const Tolerances& tol = Tolerances::standard());

/// Multiplicity-correct pole/zero report of P from its Smith-McMillan form.
PoleZeroReport unstable_pole_count(const TransferMatrix& P,
                                   const Tolerances& tol = Tolerances::standard());

/// Determinant stability test with hidden-mode detection: the loop is stable
/// iff det(I+P) has no unstable zeros and its unstable-pole multiplicity
/// equals the plant's Smith-McMillan unstable-pole multiplicity.
Theorem1Result theorem1_check(const TransferMatrix& P,
                              const Tolerances& tol = Tolerances::standard());

} // namespace mimostab
