#include "mimostab/poly_matrix.hpp"

#include "mimostab/errors.hpp"

namespace mimostab {

PolyMatrix PolyMatrix::identity_scaled(int n, const Polynomial& p) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = p;
    return m;
}

PolyMatrix poly_matmul(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < b.cols; ++j) {
            Polynomial acc;
            for (int k = 0; k < a.cols; ++k) acc = acc + a.at(i, k) * b.at(k, j);
            out.at(i, j) = acc;
        }
    return out;
}

PolyMatrix poly_add(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix out(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
    return out;
}

Polynomial poly_det(const PolyMatrix& m, const std::vector<int>& rows,
                    const std::vector<int>& cols) {
    const size_t n = rows.size();
    if (n == 1) return m.at(rows[0], cols[0]);
    if (n == 2)
        return m.at(rows[0], cols[0]) * m.at(rows[1], cols[1]) -
               m.at(rows[0], cols[1]) * m.at(rows[1], cols[0]);
    Polynomial acc;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < n; ++j) {
        if (m.at(rows[0], cols[j]).is_zero()) continue;
        std::vector<int> sub_cols;
        for (size_t k = 0; k < n; ++k)
            if (k != j) sub_cols.push_back(cols[k]);
        const Polynomial term = m.at(rows[0], cols[j]) * poly_det(m, sub_rows, sub_cols);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

Polynomial poly_det(const PolyMatrix& m) {
    if (m.rows != m.cols || m.rows == 0) throw NotSquareError();
    std::vector<int> idx(static_cast<size_t>(m.rows));
    for (int i = 0; i < m.rows; ++i) idx[static_cast<size_t>(i)] = i;
    return poly_det(m, idx, idx);
}

PolyMatrix poly_adjugate(const PolyMatrix& m) {
    if (m.rows != m.cols) throw NotSquareError();
    const int n = m.rows;
    PolyMatrix adj(n, n);
    if (n == 1) {
        adj.at(0, 0) = Polynomial::one();
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rs, cs;
            for (int k = 0; k < n; ++k) {
                if (k != j) rs.push_back(k);
                if (k != i) cs.push_back(k);
            }
            Polynomial cof = poly_det(m, rs, cs);
            if ((i + j) % 2 != 0) cof = -cof;
            adj.at(i, j) = cof;
        }
    return adj;
}

} // namespace mimostab
