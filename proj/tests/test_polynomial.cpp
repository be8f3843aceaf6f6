#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "mimostab/errors.hpp"
#include "mimostab/polynomial.hpp"

using namespace mimostab;

namespace {

bool has_root(const RootSet& roots, Complex z, int mult, double tol = 1e-9) {
    for (const auto& r : roots)
        if (std::abs(r.location - z) <= tol && r.multiplicity == mult) return true;
    return false;
}

} // namespace

TEST_CASE("arithmetic basics") {
    const Polynomial a({1, 1});  // s + 1
    const Polynomial b({2, 1});  // s + 2
    CHECK((a * b).almost_equal(Polynomial({2, 3, 1}), 0.0));  // s^2 + 3s + 2
    CHECK((a + Polynomial::zero()).almost_equal(a, 0.0));
    // n(s) + d(s) for P = (1-2s)/(1+s): closed-loop characteristic 2 - s.
    const Polynomial n({1, -2});
    const Polynomial d({1, 1});
    CHECK((n + d).almost_equal(Polynomial({2, -1}), 0.0));
}

TEST_CASE("trailing zeros are stripped") {
    const Polynomial p({1, 2, 0, 0});
    CHECK(p.degree() == 1);
    const Polynomial q = Polynomial({1, 1, 1}) - Polynomial({0, 0, 1});
    CHECK(q.degree() == 1);
    CHECK(Polynomial({0.0}).is_zero());
    CHECK(Polynomial().is_zero());
}

TEST_CASE("roots of small polynomials") {
    // s^2 + 3s + 2 -> {-1, -2}
    auto r = Polynomial({2, 3, 1}).roots();
    CHECK(r.size() == 2);
    CHECK(has_root(r, Complex(-1, 0), 1));
    CHECK(has_root(r, Complex(-2, 0), 1));

    // 5s - 1 -> 0.2
    r = Polynomial({-1, 5}).roots();
    CHECK(r.size() == 1);
    CHECK(has_root(r, Complex(0.2, 0), 1, 1e-12));

    // s^2 - s - 1 -> (1 +- sqrt(5))/2
    r = Polynomial({-1, -1, 1}).roots();
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(has_root(r, Complex(phi, 0), 1, 1e-12));
    CHECK(has_root(r, Complex(1.0 - phi, 0), 1, 1e-12));

    CHECK_THROWS_AS(Polynomial::zero().roots(), ZeroPolynomialError);
}

TEST_CASE("repeated roots cluster with summed multiplicity") {
    // (s+1)^2 (s+2)^2 expanded
    const Polynomial p = Polynomial({1, 1}) * Polynomial({1, 1}) * Polynomial({2, 1}) * Polynomial({2, 1});
    const auto r = p.roots();
    CHECK(r.size() == 2);
    CHECK(has_root(r, Complex(-1, 0), 2, 1e-6));
    CHECK(has_root(r, Complex(-2, 0), 2, 1e-6));
    CHECK(total_multiplicity(r) == 4);
}

TEST_CASE("complex roots come in conjugate pairs") {
    // s^2 + 1 and a degree-5 with complex pairs
    auto r = Polynomial({1, 0, 1}).roots();
    CHECK(has_root(r, Complex(0, 1), 1, 1e-12));
    CHECK(has_root(r, Complex(0, -1), 1, 1e-12));

    const Polynomial p = Polynomial({1, 0, 1}) * Polynomial({2, 2, 1}) * Polynomial({3, 1});
    r = p.roots();
    CHECK(total_multiplicity(r) == 5);
    for (const auto& root : r) {
        bool paired = root.location.imag() == 0.0;
        for (const auto& other : r)
            if (std::abs(other.location - std::conj(root.location)) < 1e-9) paired = true;
        CHECK(paired);
    }
}

TEST_CASE("round trip: roots then re-expansion (property)") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int deg = 1 + static_cast<int>(rng() % 12);
        std::vector<double> c(static_cast<size_t>(deg) + 1);
        for (auto& v : c) v = coef(rng);
        if (std::abs(c.back()) < 0.5) c.back() = c.back() < 0 ? -1.0 : 1.0;
        const Polynomial p(c);
        if (p.degree() != deg) continue;
        const Polynomial q = Polynomial::from_roots(p.roots());
        const Polynomial m = p.monic();
        const double scale = 1.0 + m.max_abs_coefficient();
        for (int i = 0; i <= deg; ++i)
            CHECK(std::abs(q.coefficient(i) - m.coefficient(i)) < 1e-8 * scale);
    }
}

TEST_CASE("gcd: coprime, shared factor, perturbed shared factor") {
    const Polynomial s1({1, 1}), s2({2, 1}), s3({3, 1});
    CHECK(poly_gcd(s1, s2).degree() == 0);

    const Polynomial g1 = poly_gcd(s1 * s2, s1 * s3);
    CHECK(g1.almost_equal(s1, 1e-9));

    // gcd((s+1)(s+2+1e-12), (s+1)(s+3)) with tol 1e-9 -> s+1.
    // Oracle: the exact GCD of the unperturbed pair is s+1.
    const Polynomial perturbed = s1 * Polynomial({2.0 + 1e-12, 1});
    const Polynomial g2 = poly_gcd(perturbed, s1 * s3);
    CHECK(g2.almost_equal(s1, 1e-9));
}

TEST_CASE("gcd divides both inputs (property)") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        // Build a and b with a designed shared factor.
        std::vector<double> shared{coef(rng), 1.0};
        const Polynomial g0(shared);
        const Polynomial a = g0 * Polynomial({coef(rng), coef(rng), 1.0});
        const Polynomial b = g0 * Polynomial({coef(rng), 1.0});
        const Polynomial g = poly_gcd(a, b);
        CHECK(g.degree() >= 1);
        const auto [qa, ra] = a.divide(g);
        const auto [qb, rb] = b.divide(g);
        CHECK(ra.max_abs_coefficient() < 1e-7 * (1.0 + a.max_abs_coefficient()));
        CHECK(rb.max_abs_coefficient() < 1e-7 * (1.0 + b.max_abs_coefficient()));
    }
}

TEST_CASE("division with remainder") {
    const Polynomial p({2, 3, 1});  // (s+1)(s+2)
    const auto [q, r] = p.divide(Polynomial({1, 1}));
    CHECK(q.almost_equal(Polynomial({2, 1}), 1e-12));
    CHECK(r.is_zero());

    const auto [q2, r2] = Polynomial({1, 0, 1}).divide(Polynomial({1, 1}));
    CHECK(q2.almost_equal(Polynomial({-1, 1}), 1e-12));
    CHECK(r2.almost_equal(Polynomial({2}), 1e-12));
}

TEST_CASE("lcm unions root multisets") {
    const Polynomial a = Polynomial({1, 1}) * Polynomial({2, 1});
    const Polynomial b = Polynomial({1, 1}) * Polynomial({3, 1});
    const Polynomial l = poly_lcm(a, b);
    CHECK(l.degree() == 3);
    const Polynomial expect = (Polynomial({1, 1}) * Polynomial({2, 1}) * Polynomial({3, 1}));
    CHECK(l.almost_equal(expect, 1e-8));
}

TEST_CASE("complex-coefficient roots with repeated-root snapping") {
    // (lambda - (1+i))(lambda - 2) = lambda^2 - (3+i)lambda + (2+2i)
    const std::vector<Complex> c{Complex(2, 2), Complex(-3, -1), Complex(1, 0)};
    auto r = complex_poly_roots(c);
    REQUIRE(r.size() == 2);
    std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(std::abs(r[0] - Complex(1, 1)) < 1e-10);
    CHECK(std::abs(r[1] - Complex(2, 0)) < 1e-10);

    // Perfect square: both roots must come out exactly equal.
    const Complex z(0.3, -0.7);
    const std::vector<Complex> sq{z * z, -2.0 * z, Complex(1, 0)};
    const auto rr = complex_poly_roots(sq);
    REQUIRE(rr.size() == 2);
    CHECK(rr[0] == rr[1]);
}

TEST_CASE("pretty printing") {
    CHECK(Polynomial({2, 3, 1}).str() == "s^2 + 3s + 2");
    CHECK(Polynomial({-1, 5}).str() == "5s - 1");
    CHECK(Polynomial::zero().str() == "0");
}
