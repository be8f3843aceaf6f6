#include "mimostab/transfer_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "mimostab/errors.hpp"
#include "mimostab/poly_matrix.hpp"

namespace mimostab {

std::string to_string(StabilityStatus s) {
    switch (s) {
        case StabilityStatus::Stable: return "stable";
        case StabilityStatus::Unstable: return "unstable";
        case StabilityStatus::Marginal: return "marginal";
    }
    return "?";
}

Verdict classify_poles(const RootSet& poles, const std::string& method, const Tolerances& tol) {
    Verdict v;
    v.method = method;
    bool any_unstable = false;
    bool any_marginal = false;
    for (const auto& p : poles) {
        if (p.location.real() > tol.marginal_band) {
            any_unstable = true;
            v.witness_poles.push_back(p);
        } else if (p.location.real() >= -tol.marginal_band) {
            any_marginal = true;
            v.witness_poles.push_back(p);
        }
    }
    v.status = any_unstable ? StabilityStatus::Unstable
                            : (any_marginal ? StabilityStatus::Marginal : StabilityStatus::Stable);
    std::sort(v.witness_poles.begin(), v.witness_poles.end(), [](const Root& a, const Root& b) {
        if (a.location.real() != b.location.real()) return a.location.real() > b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return v;
}

namespace {

// Build the reduced fraction num/den when both sides are known to carry
// copies of the roots in `known` (the common-denominator content). Those are
// cancelled by evaluation-tested deflation at the known locations, which
// handles high multiplicities exactly where clustering would fall apart; the
// constructor's root-matching reduce only mops up what is left.
RationalFunction reduced_over_known(Polynomial num, Polynomial den, const RootSet& known,
                                    const Tolerances& tol) {
    if (num.is_zero()) return RationalFunction();
    const int cap = std::max(num.degree(), den.degree());
    for (const auto& r : known) {
        if (r.location.imag() < 0.0) continue;  // quadratics consume the pair
        auto [num_stripped, cn] = strip_known_root(num, r.location, cap);
        if (cn == 0) continue;
        auto [den_stripped, cd] = strip_known_root(den, r.location, cap);
        if (cd == 0) continue;
        const int c = std::min(cn, cd);
        num = strip_known_root(num, r.location, c).first;
        den = strip_known_root(den, r.location, c).first;
    }
    return RationalFunction(std::move(num), std::move(den), tol);
}

} // namespace

TransferMatrix::TransferMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows * cols)) {}

TransferMatrix::TransferMatrix(std::vector<std::vector<RationalFunction>> grid) {
    rows_ = static_cast<int>(grid.size());
    cols_ = rows_ > 0 ? static_cast<int>(grid[0].size()) : 0;
    for (const auto& row : grid)
        if (static_cast<int>(row.size()) != cols_)
            throw ValidationError("ragged transfer-matrix grid");
    for (auto& row : grid)
        for (auto& f : row) entries_.push_back(std::move(f));
}

TransferMatrix TransferMatrix::identity(int n) {
    TransferMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = RationalFunction::one();
    return m;
}

RationalFunction& TransferMatrix::at(int i, int j) {
    return entries_[static_cast<size_t>(i * cols_ + j)];
}

const RationalFunction& TransferMatrix::at(int i, int j) const {
    return entries_[static_cast<size_t>(i * cols_ + j)];
}

bool TransferMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

bool TransferMatrix::is_proper() const {
    for (const auto& e : entries_)
        if (!e.is_proper()) return false;
    return true;
}

TransferMatrix TransferMatrix::operator+(const TransferMatrix& rhs) const {
    TransferMatrix out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) + rhs.at(i, j);
    return out;
}

TransferMatrix TransferMatrix::operator-(const TransferMatrix& rhs) const {
    TransferMatrix out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) - rhs.at(i, j);
    return out;
}

TransferMatrix TransferMatrix::operator*(const TransferMatrix& rhs) const {
    // Products go through the common-denominator representation so entry
    // reductions happen once, not per partial sum.
    const auto [ma, qa] = common_denominator();
    const auto [mb, qb] = rhs.common_denominator();
    const PolyMatrix prod = poly_matmul(ma, mb);
    const Polynomial q = qa * qb;
    const Tolerances& tol = Tolerances::standard();
    const RootSet known = q.degree() >= 1 ? q.roots(tol) : RootSet{};
    TransferMatrix out(rows_, rhs.cols());
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < rhs.cols(); ++j)
            out.at(i, j) = reduced_over_known(prod.at(i, j), q, known, tol);
    return out;
}

TransferMatrix TransferMatrix::operator*(double scalar) const {
    TransferMatrix out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) * scalar;
    return out;
}

TransferMatrix TransferMatrix::operator*(const RationalFunction& f) const {
    TransferMatrix out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) * f;
    return out;
}

TransferMatrix TransferMatrix::transpose() const {
    TransferMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

Eigen::MatrixXcd TransferMatrix::eval(Complex s, const Tolerances& tol) const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            try {
                m(i, j) = at(i, j).eval(s, tol);
            } catch (const PoleEvaluationError& e) {
                throw PoleEvaluationError(std::string(e.what()) + " at entry (" +
                                              std::to_string(i) + "," + std::to_string(j) + ")",
                                          i, j);
            }
        }
    return m;
}

Eigen::MatrixXd TransferMatrix::limit_at_infinity() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            const auto lim = at(i, j).limit_at_infinity();
            if (!lim) throw Error("improper entry has no finite limit at infinity");
            m(i, j) = *lim;
        }
    return m;
}

std::pair<PolyMatrix, Polynomial> TransferMatrix::common_denominator(const Tolerances& tol) const {
    // q = monic LCM of the entry denominators via a root-multiset union;
    // entry dens are small and reduced, so their roots are the accurate
    // ground truth here.
    RootSet uni;
    for (const auto& e : entries_) {
        if (e.is_zero() || e.den().degree() < 1) continue;
        for (const auto& r : e.den().roots(tol)) {
            bool matched = false;
            for (auto& u : uni) {
                if (std::abs(u.location - r.location) <=
                    tol.reduce_match * (1.0 + std::abs(u.location))) {
                    u.multiplicity = std::max(u.multiplicity, r.multiplicity);
                    matched = true;
                    break;
                }
            }
            if (!matched) uni.push_back(r);
        }
    }
    const Polynomial q = Polynomial::from_roots(uni, 1.0);
    PolyMatrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            const auto& f = at(i, j);
            if (f.is_zero()) continue;
            // cofactor q / den_ij from the multiset difference
            RootSet diff;
            std::vector<int> rem;
            RootSet den_roots = f.den().degree() >= 1 ? f.den().roots(tol) : RootSet{};
            for (const auto& r : den_roots) rem.push_back(r.multiplicity);
            for (const auto& u : uni) {
                int mult = u.multiplicity;
                for (size_t k = 0; k < den_roots.size() && mult > 0; ++k) {
                    if (rem[k] == 0) continue;
                    if (std::abs(u.location - den_roots[k].location) <=
                        tol.reduce_match * (1.0 + std::abs(u.location))) {
                        const int used = std::min(mult, rem[k]);
                        rem[k] -= used;
                        mult -= used;
                    }
                }
                if (mult > 0) diff.push_back({u.location, mult});
            }
            m.at(i, j) = f.num() * Polynomial::from_roots(diff, 1.0);
        }
    return {m, q};
}

RationalFunction TransferMatrix::det() const {
    if (!is_square()) throw NotSquareError();
    const Tolerances& tol = Tolerances::standard();
    const auto [m, q] = common_denominator();
    Polynomial qn = Polynomial::one();
    for (int i = 0; i < rows_; ++i) qn = qn * q;
    RootSet known = q.degree() >= 1 ? q.roots(tol) : RootSet{};
    for (auto& r : known) r.multiplicity *= rows_;
    return reduced_over_known(poly_det(m), qn, known, tol);
}

TransferMatrix TransferMatrix::inverse() const {
    if (!is_square()) throw NotSquareError();
    const int n = rows_;
    const auto [m, q] = common_denominator();
    const Polynomial d = poly_det(m);
    if (d.is_zero()) throw SingularMatrixError();
    // (M/q)^{-1} = q * adj(M) / det(M); one reduction per entry.
    const PolyMatrix adj = poly_adjugate(m);
    const Tolerances& tol = Tolerances::standard();
    const RootSet known = q.degree() >= 1 ? q.roots(tol) : RootSet{};
    TransferMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.at(i, j) = reduced_over_known(q * adj.at(i, j), d, known, tol);
    return out;
}

RootSet TransferMatrix::entry_poles(const Tolerances& tol) const {
    RootSet uni;
    for (const auto& e : entries_) {
        if (e.is_zero()) continue;
        for (const auto& p : e.poles(tol)) {
            bool matched = false;
            for (auto& u : uni) {
                if (std::abs(u.location - p.location) <=
                    std::max(tol.reduce_match, tol.root_cluster_rel) *
                        (1.0 + std::abs(u.location))) {
                    u.multiplicity = std::max(u.multiplicity, p.multiplicity);
                    matched = true;
                    break;
                }
            }
            if (!matched) uni.push_back(p);
        }
    }
    std::sort(uni.begin(), uni.end(), [](const Root& a, const Root& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return uni;
}

bool TransferMatrix::is_stable(const Tolerances& tol) const {
    for (const auto& p : entry_poles(tol))
        if (p.location.real() >= -tol.marginal_band) return false;
    return true;
}

std::vector<RationalFunction> TransferMatrix::charpoly_coefficients() const {
    if (!is_square()) throw NotSquareError();
    const int n = rows_;
    const auto [m, q] = common_denominator();
    // det(lambda I - P) = sum_k (-1)^k e_k lambda^{n-k} with e_k the sum of
    // k x k principal minors. Each e_k = (sum of minors of M) / q^k with the
    // numerator summed exactly in polynomial space, so structural
    // cancellations (nilpotent couplings and the like) survive bit-exactly.
    std::vector<RationalFunction> coeffs(static_cast<size_t>(n) + 1);
    coeffs[static_cast<size_t>(n)] = RationalFunction::one();
    Polynomial qk = Polynomial::one();
    for (int k = 1; k <= n; ++k) {
        qk = qk * q;
        Polynomial acc;
        std::vector<int> idx(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
        while (true) {
            acc = acc + poly_det(m, idx, idx);
            int pos = k - 1;
            while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - k + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<size_t>(pos)];
            for (int t = pos + 1; t < k; ++t)
                idx[static_cast<size_t>(t)] = idx[static_cast<size_t>(t - 1)] + 1;
        }
        if (k % 2 != 0) acc = -acc;
        RootSet known = q.degree() >= 1 ? q.roots(Tolerances::standard()) : RootSet{};
        for (auto& r : known) r.multiplicity *= k;
        coeffs[static_cast<size_t>(n - k)] =
            reduced_over_known(acc, qk, known, Tolerances::standard());
    }
    return coeffs;
}

ClosedLoop closed_loop(const TransferMatrix& P, const TransferMatrix* U, const Tolerances& tol) {
    if (!P.is_square()) throw NotSquareError();
    const int n = P.rows();
    // Everything over one common denominator: with P U = ML / qL,
    //   sensitivity   (I + P U)^{-1} = qL adj(A) / det(A),  A = qL I + ML
    //   complementary P U (I+P U)^{-1} = ML adj(A) / det(A).
    PolyMatrix ml;
    Polynomial ql;
    if (U != nullptr) {
        const auto [mp, qp] = P.common_denominator(tol);
        const auto [mu, qu] = U->common_denominator(tol);
        ml = poly_matmul(mp, mu);
        ql = qp * qu;
    } else {
        auto [mp, qp] = P.common_denominator(tol);
        ml = std::move(mp);
        ql = std::move(qp);
    }
    const PolyMatrix a = poly_add(ml, PolyMatrix::identity_scaled(n, ql));
    const Polynomial d = poly_det(a);
    if (d.is_zero()) throw SingularLoopError();
    const PolyMatrix adj = poly_adjugate(a);
    ClosedLoop cl;
    cl.sensitivity = TransferMatrix(n, n);
    cl.complementary = TransferMatrix(n, n);
    const PolyMatrix t_num = poly_matmul(ml, adj);
    const RootSet known = ql.degree() >= 1 ? ql.roots(tol) : RootSet{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cl.sensitivity.at(i, j) = reduced_over_known(ql * adj.at(i, j), d, known, tol);
            cl.complementary.at(i, j) = reduced_over_known(t_num.at(i, j), d, known, tol);
        }
    return cl;
}

Verdict direct_stability(const TransferMatrix& P, const TransferMatrix* U, const Tolerances& tol) {
    const ClosedLoop cl = closed_loop(P, U, tol);
    return classify_poles(cl.sensitivity.entry_poles(tol), "direct", tol);
}

} // namespace mimostab
