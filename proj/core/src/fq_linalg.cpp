#include "ffl/fq_linalg.hpp"

#include <utility>

namespace ffl {

int fq_matrix_rank(const Fq& f, std::vector<std::vector<uint32_t>> m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    for (const auto& r : m)
        if (r.size() != cols) throw DimensionMismatch("ragged matrix");
    for (const auto& r : m)
        for (uint32_t v : r)
            if (v >= f.q()) throw Error("entry out of range");

    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pivot = row;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[row]);
        uint32_t inv = f.inv(m[row][col]);
        for (size_t i = row + 1; i < rows; ++i) {
            if (m[i][col] == 0) continue;
            uint32_t factor = f.mul(m[i][col], inv);
            for (size_t j = col; j < cols; ++j)
                m[i][j] = f.sub(m[i][j], f.mul(factor, m[row][j]));
        }
        ++row;
        ++rank;
    }
    return rank;
}

FqPoly poly_matrix_det(std::vector<std::vector<FqPoly>> m) {
    size_t n = m.size();
    if (n == 0) throw DimensionMismatch("determinant of an empty matrix");
    for (const auto& r : m)
        if (r.size() != n) throw DimensionMismatch("determinant of a non-square matrix");
    const Fq f = m[0][0].field();
    for (const auto& r : m)
        for (const auto& e : r) require_same_field(f, e.field());

    if (n == 1) return m[0][0];

    bool negate = false;
    FqPoly prev = FqPoly::constant(f, 1);
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t pivot = k;
        while (pivot < n && m[pivot][k].zero()) ++pivot;
        if (pivot == n) return FqPoly(f);  // zero column -> singular
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                FqPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                if (num.zero()) {
                    m[i][j] = num;
                    continue;
                }
                auto [quo, rem] = divrem(num, prev);
                if (!rem.zero()) throw Error("fraction-free elimination: inexact division");
                m[i][j] = quo;
            }
            m[i][k] = FqPoly(f);
        }
        prev = m[k][k];
    }
    FqPoly det = m[n - 1][n - 1];
    return negate ? det.scaled(f.neg(1)) : det;
}

}  // namespace ffl
