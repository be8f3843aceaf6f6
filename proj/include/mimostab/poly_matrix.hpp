#pragma once

#include <utility>
#include <vector>

#include "mimostab/polynomial.hpp"

namespace mimostab {

/// Dense polynomial matrix, row-major. Used as the fraction-free backbone of
/// the transfer-matrix operations: a rational matrix is carried as M(s)/q(s)
/// with one common denominator, every determinant/adjugate/product is pure
/// polynomial arithmetic, and a rational reduction happens exactly once on
/// the way out. This keeps chained operations from compounding the error of
/// repeated numeric GCD cancellations.
struct PolyMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Polynomial> entries;

    PolyMatrix() = default;
    PolyMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<size_t>(r * c)) {}

    Polynomial& at(int i, int j) { return entries[static_cast<size_t>(i * cols + j)]; }
    const Polynomial& at(int i, int j) const {
        return entries[static_cast<size_t>(i * cols + j)];
    }

    static PolyMatrix identity_scaled(int n, const Polynomial& p);
};

PolyMatrix poly_matmul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_add(const PolyMatrix& a, const PolyMatrix& b);

/// Determinant of the square submatrix (cofactor expansion, exact
/// coefficient arithmetic).
Polynomial poly_det(const PolyMatrix& m, const std::vector<int>& rows,
                    const std::vector<int>& cols);
Polynomial poly_det(const PolyMatrix& m);

/// Classical adjugate: adj(M)(i,j) = (-1)^{i+j} * minor_{j,i}.
PolyMatrix poly_adjugate(const PolyMatrix& m);

} // namespace mimostab
