#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/LU>

#include <cmath>
#include <random>

#include "mimostab/errors.hpp"
#include "mimostab/transfer_matrix.hpp"
#include "support.hpp"

using namespace mimostab;
using testsup::rf;

TEST_CASE("evaluation") {
    TransferMatrix d(2, 2);
    d.at(0, 0) = rf({1}, {1, 1});
    d.at(1, 1) = rf({1}, {1, 1});
    const auto m = d.eval(Complex(0, 0));
    CHECK(std::abs(m(0, 0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(m(0, 1)) < 1e-15);

    // The 2x2 loop-gain example at s = 0 evaluates to [[0,1],[-3,-3]].
    const auto e3 = testsup::example3().eval(Complex(0, 0));
    CHECK(std::abs(e3(0, 0)) < 1e-15);
    CHECK(std::abs(e3(0, 1) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(e3(1, 0) - Complex(-3, 0)) < 1e-12);
    CHECK(std::abs(e3(1, 1) - Complex(-3, 0)) < 1e-15);

    // Pole evaluation carries the offending entry.
    try {
        testsup::example3().eval(Complex(-1, 0));
        CHECK(false);
    } catch (const PoleEvaluationError& e) {
        CHECK(e.row == 1);
        CHECK(e.col == 0);
    }
}

TEST_CASE("determinant of I+P for the worked systems") {
    // Hidden-mode pair: both systems share det(I+P) = (s+4)(2s+1)/((s+1)(s-1)).
    const auto d1 = (TransferMatrix::identity(3) + testsup::example1_p1()).det();
    const auto d2 = (TransferMatrix::identity(3) + testsup::example1_p2()).det();
    CHECK(d1.almost_equal(d2, 1e-9));
    const RationalFunction expected(Polynomial({4, 1}) * Polynomial({1, 2}),
                                    Polynomial({1, 1}) * Polynomial({-1, 1}));
    CHECK(d1.almost_equal(expected, 1e-9));

    // ... while det(P1) = det(P2) = (2s+4)/((s+1)(s+2)(s-1)), reduced
    // 2/((s+1)(s-1)). The two matrices differ only in Smith-McMillan
    // structure, not in either determinant.
    const auto p1det = testsup::example1_p1().det();
    const auto p2det = testsup::example1_p2().det();
    CHECK(p1det.almost_equal(p2det, 1e-9));
    const RationalFunction pdet_expected(Polynomial({4, 2}),
                                         Polynomial({1, 1}) * Polynomial({2, 1}) * Polynomial({-1, 1}));
    CHECK(p1det.almost_equal(pdet_expected, 1e-9));

    // det(I+P) = -(5s-1)/(s+1) for the 2x2 loop-gain example.
    const auto d3 = (TransferMatrix::identity(2) + testsup::example3()).det();
    CHECK(d3.almost_equal(RationalFunction(Polynomial({1, -5}), Polynomial({1, 1})), 1e-9));

    TransferMatrix rect(1, 2);
    CHECK_THROWS_AS(rect.det(), NotSquareError);
}

TEST_CASE("inverse") {
    // inverse(I + example3) = (s+1)/(5s-1) * [[2, 1],[3(s-1)/(s+1), -1]].
    const auto inv = (TransferMatrix::identity(2) + testsup::example3()).inverse();
    CHECK(inv.at(0, 0).almost_equal(RationalFunction(Polynomial({2, 2}), Polynomial({-1, 5})), 1e-9));
    CHECK(inv.at(0, 1).almost_equal(RationalFunction(Polynomial({1, 1}), Polynomial({-1, 5})), 1e-9));
    CHECK(inv.at(1, 0).almost_equal(RationalFunction(Polynomial({-3, 3}), Polynomial({-1, 5})), 1e-9));
    CHECK(inv.at(1, 1).almost_equal(RationalFunction(Polynomial({-1, -1}), Polynomial({-1, 5})), 1e-9));

    // identity and diagonal cases
    const auto id_inv = TransferMatrix::identity(2).inverse();
    CHECK(id_inv.at(0, 0).almost_equal(RationalFunction::one(), 1e-12));
    CHECK(id_inv.at(0, 1).is_zero());

    TransferMatrix diag(2, 2);
    diag.at(0, 0) = rf({1}, {1, 1});
    diag.at(1, 1) = rf({2}, {2, 1});
    const auto dinv = diag.inverse();
    CHECK(dinv.at(0, 0).almost_equal(RationalFunction(Polynomial({1, 1}), Polynomial::one()), 1e-12));
    CHECK(dinv.at(1, 1).almost_equal(RationalFunction(Polynomial({2, 1}), Polynomial({2})), 1e-12));

    // P * P^{-1} = I as rational functions.
    const auto prod = diag * dinv;
    CHECK(prod.at(0, 0).almost_equal(RationalFunction::one(), 1e-10));
    CHECK(prod.at(0, 1).is_zero());

    TransferMatrix singular(2, 2);
    singular.at(0, 0) = rf({1}, {1, 1});
    singular.at(0, 1) = rf({1}, {1, 1});
    singular.at(1, 0) = rf({1}, {1, 1});
    singular.at(1, 1) = rf({1}, {1, 1});
    CHECK_THROWS_AS(singular.inverse(), SingularMatrixError);
}

TEST_CASE("closed loop maps") {
    // P = 0 -> sensitivity = I, complementary = 0.
    TransferMatrix zero(2, 2);
    const auto cl0 = closed_loop(zero);
    CHECK(cl0.sensitivity.at(0, 0).almost_equal(RationalFunction::one(), 1e-12));
    CHECK(cl0.complementary.is_zero());

    // The loop-gain example has a sensitivity pole at 1/5.
    const auto cl3 = closed_loop(testsup::example3());
    const auto poles = cl3.sensitivity.entry_poles();
    bool found = false;
    for (const auto& p : poles)
        if (std::abs(p.location - Complex(0.2, 0)) < 1e-9) found = true;
    CHECK(found);

    // SISO P = (1-2s)/(1+s): complementary = (1-2s)/(2-s), pole at 2.
    const auto cls = closed_loop(testsup::siso_limit());
    CHECK(cls.complementary.at(0, 0).almost_equal(
        RationalFunction(Polynomial({1, -2}), Polynomial({2, -1})), 1e-9));

    // Ill-posed loop: P = -I gives det(I+P) identically zero.
    TransferMatrix minus_i = TransferMatrix::identity(2) * (-1.0);
    CHECK_THROWS_AS(closed_loop(minus_i), SingularLoopError);
}

TEST_CASE("direct stability verdicts") {
    TransferMatrix diag(2, 2);
    diag.at(0, 0) = rf({1}, {1, 1});
    diag.at(1, 1) = rf({1}, {1, 1});
    CHECK(direct_stability(diag).status == StabilityStatus::Stable);
    CHECK(direct_stability(diag).witness_poles.empty());

    const auto v3 = direct_stability(testsup::example3());
    CHECK(v3.status == StabilityStatus::Unstable);
    REQUIRE(!v3.witness_poles.empty());
    CHECK(std::abs(v3.witness_poles[0].location - Complex(0.2, 0)) < 1e-9);
    CHECK(v3.method == "direct");

    // Off-diagonal perturbation of the triangular plant: witnesses at the
    // roots of s^2 - s - 1.
    TransferMatrix u(2, 2);
    u.at(0, 0) = RationalFunction::one();
    u.at(1, 0) = RationalFunction::constant(-5.0 / 100.0);
    u.at(1, 1) = RationalFunction::one();
    const auto v5 = direct_stability(testsup::example5(100.0), &u);
    CHECK(v5.status == StabilityStatus::Unstable);
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    bool found = false;
    for (const auto& w : v5.witness_poles)
        if (std::abs(w.location - Complex(phi, 0)) < 1e-8) found = true;
    CHECK(found);

    // Marginal: an integrator in the loop -> closed-loop pole on the axis?
    // 1/s under unity feedback is stable (pole -1); build a marginal case
    // directly instead: P = -s/(s+1) gives 1+P = 1/(s+1), det zero at ... none.
    // Use P = (-2s)/(s+1): 1+P = (1-s)/(1+s), closed-loop pole at +1 -> unstable.
    TransferMatrix pm(1, 1);
    pm.at(0, 0) = rf({0, -2}, {1, 1});
    CHECK(direct_stability(pm).status == StabilityStatus::Unstable);
}

TEST_CASE("sensitivity + complementary = I (property)") {
    std::mt19937 rng(2024);
    int tested = 0;
    for (int trial = 0; trial < 40 && tested < 25; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const TransferMatrix p = testsup::random_system(rng, n);
        const TransferMatrix u = testsup::random_system(rng, n);
        ClosedLoop cl;
        try {
            cl = closed_loop(p, &u);
        } catch (const Error&) {
            continue;
        }
        ++tested;
        const TransferMatrix sum = cl.sensitivity + cl.complementary;
        // Max entry deviation from I, measured as function values on probe
        // points kept away from the closed-loop poles (the identity holds as
        // functions; next to a pole only conditioning would be measured).
        const RootSet poles = cl.sensitivity.entry_poles();
        double max_dev = 0.0;
        for (double omega : {0.0, 0.37, 1.9, 11.0}) {
            const Complex s0(0.1, omega);
            double clearance = 1e9;
            for (const auto& p0 : poles) clearance = std::min(clearance, std::abs(s0 - p0.location));
            if (clearance < 0.05) continue;
            Eigen::MatrixXcd v;
            try {
                v = sum.eval(s0);
            } catch (const PoleEvaluationError&) {
                continue;
            }
            max_dev = std::max(max_dev,
                               (v - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff());
        }
        CHECK(max_dev < 1e-8);
    }
    CHECK(tested >= 10);
}

TEST_CASE("symbolic determinant matches numeric evaluation (property)") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const TransferMatrix p = testsup::random_system(rng, n);
        const TransferMatrix ipp = TransferMatrix::identity(n) + p;
        const RationalFunction d = ipp.det();
        for (double omega : {0.13, 0.71, 2.3, 17.0}) {
            const Complex s(0, omega);
            Complex numeric;
            Complex symbolic;
            try {
                numeric = ipp.eval(s).determinant();
                symbolic = d.eval(s);
            } catch (const PoleEvaluationError&) {
                continue;
            }
            CHECK(std::abs(numeric - symbolic) <= 1e-6 * (1.0 + std::abs(numeric)));
        }
    }
}

TEST_CASE("inverse of inverse (property)") {
    // Double inversion through expanded coefficients loses eps * growth from
    // the Jacobi collapse of adjugate minors, so the round trip is only
    // representable when the common denominator stays small. Instances here
    // match the shape of the worked systems: entries over a short pool of
    // linear denominators.
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    auto simple_system = [&](int n) {
        const Polynomial pool[2] = {
            Polynomial({coef(rng) + (coef(rng) > 0 ? 3.0 : -3.0), 1.0}),
            Polynomial({coef(rng) + (coef(rng) > 0 ? 3.0 : -3.0), 1.0})};
        TransferMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m.at(i, j) =
                    RationalFunction(Polynomial({coef(rng), coef(rng)}), pool[rng() % 2]);
        return m;
    };
    int tested = 0;
    for (int trial = 0; trial < 30 && tested < 15; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const TransferMatrix p = simple_system(n);
        TransferMatrix inv;
        try {
            inv = p.inverse();
        } catch (const Error&) {
            continue;
        }
        ++tested;
        const TransferMatrix back = inv.inverse();
        const RootSet poles = p.entry_poles();
        const RootSet back_poles = back.entry_poles();
        double max_dev = 0.0;
        for (double omega : {0.21, 1.3, 7.7}) {
            const Complex s0(0.05, omega);
            double clearance = 1e9;
            for (const auto& p0 : poles) clearance = std::min(clearance, std::abs(s0 - p0.location));
            for (const auto& p0 : back_poles)
                clearance = std::min(clearance, std::abs(s0 - p0.location));
            if (clearance < 0.05) continue;
            Eigen::MatrixXcd a, b;
            try {
                a = back.eval(s0);
                b = p.eval(s0);
            } catch (const PoleEvaluationError&) {
                continue;
            }
            max_dev = std::max(max_dev, (a - b).cwiseAbs().maxCoeff() /
                                            (1.0 + b.cwiseAbs().maxCoeff()));
        }
        CHECK(max_dev < 1e-6);
    }
    CHECK(tested >= 8);
}

TEST_CASE("charpoly coefficients: exact cancellation of the coupling parameter") {
    // The antisymmetric-coupling plant has a nilpotent coupling term, so its
    // characteristic polynomial must not depend on b at all.
    for (double b : {7.0, 100.0}) {
        const auto coeffs = testsup::example4(b).charpoly_coefficients();
        REQUIRE(coeffs.size() == 3);
        // det = 1/(s+1)^2, -tr = -2/(s+1), leading 1.
        CHECK(coeffs[0].almost_equal(RationalFunction(Polynomial({1}), Polynomial({1, 2, 1})), 1e-10));
        CHECK(coeffs[1].almost_equal(RationalFunction(Polynomial({-2}), Polynomial({1, 1})), 1e-10));
        CHECK(coeffs[2].almost_equal(RationalFunction::one(), 1e-12));
    }
}
