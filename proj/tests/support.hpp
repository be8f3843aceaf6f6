#pragma once

// Shared fixtures for the test suites: the worked systems used throughout
// the corpus, plus randomized-system generators for the property suites.

#include <random>
#include <vector>

#include "mimostab/transfer_matrix.hpp"

namespace testsup {

using namespace mimostab;

inline RationalFunction rf(std::initializer_list<double> num, std::initializer_list<double> den) {
    return RationalFunction(Polynomial(num), Polynomial(den));
}

// P1 of the hidden-mode pair: unstable pole 1 with Smith-McMillan multiplicity 1.
inline TransferMatrix example1_p1() {
    TransferMatrix p(3, 3);
    p.at(0, 0) = rf({1}, {1, 1});
    p.at(0, 1) = rf({1}, {2, 1});
    p.at(0, 2) = rf({1}, {-1, 1});
    p.at(1, 1) = rf({2}, {2, 1});
    p.at(1, 2) = rf({1}, {1, 1});
    p.at(2, 2) = rf({2, 1}, {-1, 1});
    return p;
}

// P2: same determinant, unstable pole 1 with multiplicity 2 (hidden mode).
inline TransferMatrix example1_p2() {
    TransferMatrix p(3, 3);
    p.at(0, 0) = rf({1}, {1, 1});
    p.at(0, 1) = rf({1}, {-1, 1});
    p.at(0, 2) = rf({1}, {2, 1});
    p.at(1, 1) = rf({2}, {2, 1});
    p.at(1, 2) = rf({1}, {1, 1});
    p.at(2, 2) = rf({2, 1}, {-1, 1});
    return p;
}

// The 2x2 loop gain whose eigenvalue loci are individually not closed.
inline TransferMatrix example3() {
    TransferMatrix p(2, 2);
    p.at(0, 0) = RationalFunction::zero();
    p.at(0, 1) = RationalFunction::one();
    p.at(1, 0) = rf({-3, 3}, {1, 1});  // 3(s-1)/(s+1)
    p.at(1, 1) = RationalFunction::constant(-3.0);
    return p;
}

// Wide uniform margins, fragile under nonuniform diagonal perturbation.
inline TransferMatrix example4(double b) {
    const RationalFunction a = rf({1}, {1, 1});
    const RationalFunction c(Polynomial({b}), Polynomial({2, 1}));
    TransferMatrix p(2, 2);
    p.at(0, 0) = a + c;
    p.at(0, 1) = c;
    p.at(1, 0) = -c;
    p.at(1, 1) = a - c;
    return p;
}

// Triangular plant, fragile under an off-diagonal perturbation.
inline TransferMatrix example5(double b) {
    TransferMatrix p(2, 2);
    p.at(0, 0) = rf({1}, {1, 1});
    p.at(0, 1) = RationalFunction(Polynomial({b}), Polynomial({1, 1}));
    p.at(1, 1) = rf({1}, {1, 1});
    return p;
}

// SISO caution cases.
inline TransferMatrix siso_crossing() {  // 5(s+10)^2/(s+0.3)^3
    const Polynomial num = Polynomial({10, 1}) * Polynomial({10, 1}) * 5.0;
    const Polynomial den = Polynomial({0.3, 1}) * Polynomial({0.3, 1}) * Polynomial({0.3, 1});
    TransferMatrix p(1, 1);
    p.at(0, 0) = RationalFunction(num, den);
    return p;
}

inline TransferMatrix siso_limit() {  // (1-2s)/(1+s)
    TransferMatrix p(1, 1);
    p.at(0, 0) = rf({1, -2}, {1, 1});
    return p;
}

// Passivity corpus.
inline TransferMatrix pr_touching() {  // (6s^2+s+3)/(s^2+3s+2): PR, not "strong"
    TransferMatrix p(1, 1);
    p.at(0, 0) = rf({3, 1, 6}, {2, 3, 1});
    return p;
}

inline TransferMatrix pr_strict() {  // (s+3)/((s+1)(s+2)): strictly PR, not strongly
    TransferMatrix p(1, 1);
    p.at(0, 0) = rf({3, 1}, {2, 3, 1});
    return p;
}

inline TransferMatrix first_order_lag() {  // 1/(s+1)
    TransferMatrix p(1, 1);
    p.at(0, 0) = rf({1}, {1, 1});
    return p;
}

inline TransferMatrix scalar_constant(double c) {
    TransferMatrix p(1, 1);
    p.at(0, 0) = RationalFunction::constant(c);
    return p;
}

// ---------------------------------------------------------------------------
// Randomized-system generation for the property suites. Entries draw their
// denominators from a small per-system pole pool so shared and hidden pole
// structure is exercised; coefficients stay small to keep the instances
// desk-scale.
// ---------------------------------------------------------------------------

struct RandomSystemOptions {
    int max_size = 3;
    int max_entry_degree = 3;
    double axis_clearance = 0.05;  // regenerate poles closer to the axis
};

inline Polynomial random_stable_or_unstable_factor(std::mt19937& rng, double axis_clearance) {
    std::uniform_real_distribution<double> re(-2.5, 2.5);
    // Keep conjugate pairs clearly complex: a pair straddling the real axis
    // at distance ~0 is numerically indistinguishable from a double real root.
    std::uniform_real_distribution<double> im(0.05, 2.0);
    std::bernoulli_distribution complex_pair(0.4);
    for (;;) {
        if (complex_pair(rng)) {
            const double a = re(rng), b = im(rng);
            if (std::abs(a) < axis_clearance) continue;
            // (s - (a+bi))(s - (a-bi))
            return Polynomial({a * a + b * b, -2.0 * a, 1.0});
        }
        const double a = re(rng);
        if (std::abs(a) < axis_clearance) continue;
        return Polynomial({-a, 1.0});
    }
}

inline TransferMatrix random_system(std::mt19937& rng, int n,
                                    const RandomSystemOptions& opt = {}) {
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    // Pole pool: factors shared across entries, kept pairwise separated so
    // distinct poles stay distinguishable from genuinely repeated ones.
    std::vector<Polynomial> pool;
    std::vector<Complex> pool_roots;
    const int pool_size = 2 + static_cast<int>(rng() % 3);
    while (static_cast<int>(pool.size()) < pool_size) {
        const Polynomial f = random_stable_or_unstable_factor(rng, opt.axis_clearance);
        bool ok = true;
        for (const auto& r : f.roots())
            for (const auto& existing : pool_roots)
                if (std::abs(r.location - existing) < 0.05) ok = false;
        if (!ok) continue;
        for (const auto& r : f.roots()) pool_roots.push_back(r.location);
        pool.push_back(f);
    }
    TransferMatrix p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Polynomial den = Polynomial::one();
            const int nfac = 1 + static_cast<int>(rng() % 2);
            for (int k = 0; k < nfac && den.degree() < opt.max_entry_degree; ++k) {
                const Polynomial& f = pool[rng() % pool.size()];
                if (den.degree() + f.degree() <= opt.max_entry_degree) den = den * f;
            }
            if (den.degree() == 0) den = pool[rng() % pool.size()];
            std::vector<double> nc(static_cast<size_t>(rng() % den.coefficients().size()) + 1);
            for (auto& v : nc) v = coef(rng);
            Polynomial num(nc);
            if (num.degree() > den.degree()) num = Polynomial(std::vector<double>(
                num.coefficients().begin(), num.coefficients().begin() + den.degree() + 1));
            p.at(i, j) = RationalFunction(num, den);
        }
    return p;
}

// A random stable transfer matrix (all entry poles strictly in the LHP).
inline TransferMatrix random_stable_system(std::mt19937& rng, int n, int max_degree = 2) {
    std::uniform_real_distribution<double> coef(-1.5, 1.5);
    std::uniform_real_distribution<double> re(0.2, 2.5);
    std::uniform_real_distribution<double> im(0.0, 2.0);
    std::bernoulli_distribution complex_pair(0.4);
    TransferMatrix p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Polynomial den = Polynomial::one();
            while (den.degree() < 1) {
                if (complex_pair(rng) && den.degree() + 2 <= max_degree) {
                    const double a = -re(rng), b = im(rng);
                    den = den * Polynomial({a * a + b * b, -2.0 * a, 1.0});
                } else {
                    den = den * Polynomial({re(rng), 1.0});
                }
            }
            std::vector<double> nc(static_cast<size_t>(rng() % den.coefficients().size()) + 1);
            for (auto& v : nc) v = coef(rng);
            p.at(i, j) = RationalFunction(Polynomial(nc), den);
        }
    return p;
}

} // namespace testsup
