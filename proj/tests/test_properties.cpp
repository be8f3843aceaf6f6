#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Cross-module property suite: the invariants that tie the frequency-domain
// tests, the determinant test, and the direct pole check to each other on
// randomized systems. The full-scale version runs in the acceptance suite.

#include <cmath>
#include <random>

#include "mimostab/errors.hpp"
#include "mimostab/nyquist.hpp"
#include "mimostab/robustness.hpp"
#include "mimostab/smith_mcmillan.hpp"
#include "support.hpp"

using namespace mimostab;

TEST_CASE("verdict agreement across all four tests (property)") {
    std::mt19937 rng(31415);
    GridOptions opt;
    opt.base_points = 96;
    opt.max_points = 6000;
    int tested = 0, skipped = 0;
    for (int trial = 0; trial < 240 && tested < 120; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const TransferMatrix p = testsup::random_system(rng, n);
        Verdict direct;
        try {
            direct = direct_stability(p);
        } catch (const Error&) {
            ++skipped;
            continue;
        }
        if (direct.status == StabilityStatus::Marginal) {
            ++skipped;
            continue;
        }
        try {
            const Theorem1Result t1 = theorem1_check(p);
            const DetNyquistResult dn = det_nyquist(p, build_grid(p, opt));
            const GncResult gn = generalized_nyquist(p, opt);
            if (t1.verdict.status == StabilityStatus::Marginal ||
                dn.verdict.status == StabilityStatus::Marginal ||
                gn.verdict.status == StabilityStatus::Marginal) {
                ++skipped;
                continue;
            }
            ++tested;
            CHECK(t1.verdict.status == direct.status);
            CHECK(dn.verdict.status == direct.status);
            CHECK(gn.verdict.status == direct.status);
        } catch (const Error&) {
            ++skipped;
            continue;
        }
    }
    CHECK(tested >= 80);
    // The marginal/izability skip rule must not become a loophole.
    CHECK(skipped <= tested);
}

TEST_CASE("small-gain sanity: contractive stable plants close stably (property)") {
    std::mt19937 rng(2718);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 2);
        TransferMatrix p = testsup::random_stable_system(rng, n);
        const double norm = hinf_norm(p).value;
        if (norm <= 0.0) continue;
        p = p * (0.8 / norm);  // ||P||_inf = 0.8 < 1
        CHECK(direct_stability(p).status == StabilityStatus::Stable);
    }
}

TEST_CASE("det-curve winding equals the argument-principle count (property)") {
    // Oracle: the winding of det(I+P(jw)) about 0 must equal the RHP pole
    // count of the open loop minus the RHP zero count of det(I+P), computed
    // independently from the rational determinant's roots.
    std::mt19937 rng(112233);
    GridOptions opt;
    opt.base_points = 96;
    opt.max_points = 6000;
    int tested = 0;
    for (int trial = 0; trial < 80 && tested < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const TransferMatrix p = testsup::random_system(rng, n);
        try {
            const RationalFunction d = (TransferMatrix::identity(n) + p).det();
            if (d.is_zero()) continue;
            int rhp_zeros = 0, rhp_poles = 0;
            bool near_axis = false;
            if (d.num().degree() >= 1)
                for (const auto& z : d.num().roots()) {
                    if (std::abs(z.location.real()) < 1e-3) near_axis = true;
                    if (z.location.real() > 0) rhp_zeros += z.multiplicity;
                }
            if (d.den().degree() >= 1)
                for (const auto& z : d.den().roots()) {
                    if (std::abs(z.location.real()) < 1e-3) near_axis = true;
                    if (z.location.real() > 0) rhp_poles += z.multiplicity;
                }
            if (near_axis) continue;
            const DetNyquistResult r = det_nyquist(p, build_grid(p, opt));
            if (r.verdict.status == StabilityStatus::Marginal) continue;
            ++tested;
            CHECK(r.winding == rhp_poles - rhp_zeros);
        } catch (const Error&) {
            continue;
        }
    }
    CHECK(tested >= 25);
}

TEST_CASE("direct stability is invariant under the loop-gain identity (property)") {
    // closed_loop(P, U) must match closed_loop(P U, I) pole-for-pole.
    std::mt19937 rng(555777);
    int tested = 0;
    for (int trial = 0; trial < 40 && tested < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const TransferMatrix p = testsup::random_system(rng, n);
        const TransferMatrix u = testsup::random_system(rng, n);
        try {
            const Verdict a = direct_stability(p, &u);
            const Verdict b = direct_stability(p * u);
            if (a.status == StabilityStatus::Marginal || b.status == StabilityStatus::Marginal)
                continue;
            ++tested;
            CHECK(a.status == b.status);
        } catch (const Error&) {
            continue;
        }
    }
    CHECK(tested >= 12);
}
